public class Student {
    private String name;
    private int age;
    private double grade;
    private String email;

    public Student(String name, int age, String email) {
        this.name = name;
        this.age = age;
        this.email = email;
    }

    public String getName() { return name; }
    public int getAge() { return age; }
    public double getGrade() { return grade; }
    public String getEmail() { return email; }
    public void setGrade(double grade) { this.grade = grade; }
    public void setEmail(String email) { this.email = email; }
}

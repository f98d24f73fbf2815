public class Calc {
    public static int add(int a, int b) {
        return a + b;
    }

    public static int twice(int a) {
        return add(a, a);
    }

    public static void main(String[] args) {
        System.out.println(twice(add(1, 2)));
    }
}

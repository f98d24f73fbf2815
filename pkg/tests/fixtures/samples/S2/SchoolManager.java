import java.util.ArrayList;
import java.util.HashMap;
import java.util.List;
import java.util.Map;

public class SchoolManager {
    private final List<Student> students = new ArrayList<>();
    private final Map<String, Integer> attendance = new HashMap<>();
    private int credits;
    private double average;
    private String title;
    private int failures;
    private final List<String> log = new ArrayList<>();
    private int capacity;
    private double budget;

    public SchoolManager(String title, int capacity, double budget) {
        this.title = title;
        this.capacity = capacity;
        this.budget = budget;
    }

    public boolean enroll(Student s) {
        if (students.size() >= capacity) {
            return false;
        }
        for (Student other : students) {
            if (other.getEmail().equals(s.getEmail())) {
                return false;
            }
        }
        students.add(s);
        attendance.put(s.getName(), 0);
        return true;
    }

    public void markPresent(String who, boolean late) {
        if (who == null || who.isEmpty()) {
            return;
        }
        int seen = attendance.getOrDefault(who, 0);
        if (late && seen > 0) {
            seen--;
        } else if (!late) {
            seen++;
        }
        attendance.put(who, seen);
        credits += late ? 0 : 1;
    }

    public int creditsFor(int sessions) {
        int total = 0;
        for (int i = 0; i < sessions; i++) {
            if (i % 2 == 0 && credits > i) {
                total += 2;
            } else if (i % 3 == 0) {
                total++;
            }
        }
        average = sessions == 0 ? 0 : (double) total / sessions;
        return total;
    }

    public double recompute() {
        double sum = 0;
        int counted = 0;
        for (Student s : students) {
            if (s.getGrade() < 0 || s.getGrade() > 100) {
                continue;
            }
            sum += s.getGrade();
            counted++;
        }
        average = counted == 0 ? 0 : sum / counted;
        return average > 50 && average < 90 ? average : average / 2 + average / 2;
    }

    public int countFailures(double pass) {
        failures = 0;
        for (Student s : students) {
            if (s.getGrade() < pass) {
                failures++;
            } else if (s.getAge() < 16 && s.getGrade() < pass + 10) {
                failures++;
            }
        }
        return failures;
    }

    public String banner(String suffix) {
        String text = title == null ? "School" : title;
        if (suffix != null && !suffix.isEmpty()) {
            text = text + " " + suffix;
        }
        if (failures > 0) {
            text = text + " (" + failures + " failing)";
        } else if (failures == 0 && log.isEmpty()) {
            text = text + " (new)";
        }
        return text;
    }

    public void record(String entry, int level) {
        if (entry == null) {
            return;
        }
        switch (level) {
            case 0: log.add(entry); break;
            case 1: log.add("! " + entry); break;
            default: log.add("!! " + entry);
        }
        if (log.size() > 1000) {
            log.remove(0);
        }
    }

    public boolean canHire(double salary, int months) {
        if (salary <= 0 || months <= 0 || Double.isNaN(salary)) {
            return false;
        }
        double cost = salary * months;
        if (capacity > 100 && cost < budget) {
            budget -= cost;
            return true;
        }
        return cost < budget / 2 && months < 12;
    }
}

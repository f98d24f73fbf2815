public class Task {
    private final String title;
    private final int priority;
    private boolean done;

    public Task(String title, int priority) {
        this.title = title;
        this.priority = priority;
    }

    public void complete() {
        done = true;
    }

    public boolean isDone() {
        return done;
    }

    public boolean outranks(Task other) {
        return priority > other.priority;
    }

    @Override
    public String toString() {
        return (done ? "[x] " : "[ ] ") + title;
    }
}

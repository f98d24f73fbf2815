import java.util.ArrayList;
import java.util.List;

public class TodoList {
    private final List<Task> tasks = new ArrayList<>();

    public void add(Task task) {
        tasks.add(task);
    }

    public List<Task> pending() {
        List<Task> out = new ArrayList<>();
        for (Task t : tasks) {
            if (!t.isDone()) {
                out.add(t);
            }
        }
        return out;
    }

    public Task mostUrgent() {
        Task best = null;
        for (Task t : pending()) {
            if (best == null || t.outranks(best)) {
                best = t;
            }
        }
        return best;
    }

    public static void main(String[] args) {
        TodoList list = new TodoList();
        list.add(new Task("write report", 2));
        list.add(new Task("buy milk", 1));
        list.mostUrgent().complete();
        System.out.println(list.pending());
    }
}

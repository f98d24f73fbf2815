import java.util.HashMap;
import java.util.Map;

public class Warehouse {
    private final Map<String, Item> stock = new HashMap<>();

    public void store(Item item) {
        stock.put(item.getName(), item);
    }

    public boolean ship(String name, int amount) {
        Item item = stock.get(name);
        return item != null && item.take(amount);
    }

    public long worth() {
        long total = 0;
        for (Item item : stock.values()) {
            total += item.value();
        }
        return total;
    }

    public static void main(String[] args) {
        Warehouse w = new Warehouse();
        w.store(new Item("bolt", 15, 100));
        w.ship("bolt", 30);
        System.out.println(w.worth());
    }
}

import java.util.ArrayList;
import java.util.List;

public class Garage {
    private final List<Vehicle> parked = new ArrayList<>();

    public void park(Vehicle v) {
        parked.add(v);
    }

    public int tyres() {
        int n = 0;
        for (Vehicle v : parked) {
            n += v.wheels();
        }
        return n;
    }

    public static void main(String[] args) {
        Garage g = new Garage();
        g.park(new Car("AB-123"));
        g.park(new Motorbike("XY-9"));
        System.out.println(g.tyres());
    }
}

public abstract class Vehicle {
    private final String plate;

    protected Vehicle(String plate) {
        this.plate = plate;
    }

    public abstract int wheels();

    public String describe() {
        return plate + " on " + wheels() + " wheels";
    }
}

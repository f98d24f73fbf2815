public class Bird {
    protected double altitude;

    public void fly(double metres) {
        altitude += metres;
        System.out.println("now at " + altitude);
    }

    public double getAltitude() {
        return altitude;
    }
}

public class Penguin extends Bird {
    @Override
    public void fly(double metres) {
    }

    public String waddle() {
        return "waddling";
    }
}

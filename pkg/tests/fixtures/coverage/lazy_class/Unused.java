public class Unused {
    private int hits;

    public void hit() {
        hits++;
    }
}

public class Broken {
    private int count;

    public void bump(int by) {
        if (by > 0) {
            count += by;
    }

    public int getCount() {
        return count;
    }
}

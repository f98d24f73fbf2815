public class Config {
    private int level;

    public void setLevel(int level) {
        this.level = level;
    }

    public int level() {
        return level;
    }
}

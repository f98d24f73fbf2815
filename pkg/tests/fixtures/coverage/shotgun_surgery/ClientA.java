public class ClientA {
    public void tune(Config config) {
        config.setLevel(config.level() + 1);
    }
}

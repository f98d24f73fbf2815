public class TextMessenger {
    private int sent;

    public void send(long phone, String text) { sent += phone > 0 && !text.isEmpty() ? 1 : 0; }
    public void retry(long phone) { sent += phone > 0 ? 1 : 0; }
    public int count() { return sent; }
}

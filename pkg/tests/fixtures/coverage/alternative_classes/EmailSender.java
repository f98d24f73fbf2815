public class EmailSender {
    private int sent;

    public boolean send(String to, String body) { sent++; return !to.isEmpty() && !body.isEmpty(); }
    public void retry(String to) { sent += to.length() > 0 ? 1 : 0; }
    public int count() { return sent; }
}

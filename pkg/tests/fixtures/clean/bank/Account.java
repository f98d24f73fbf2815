public class Account {
    private final String id;
    private long cents;

    public Account(String id) {
        this.id = id;
    }

    public void deposit(long amount) {
        if (amount <= 0) {
            throw new IllegalArgumentException("amount must be positive");
        }
        cents += amount;
    }

    public void withdraw(long amount) {
        if (amount > cents) {
            throw new IllegalStateException("insufficient funds in " + id);
        }
        cents -= amount;
    }

    public long getCents() {
        return cents;
    }

    public String getId() {
        return id;
    }
}

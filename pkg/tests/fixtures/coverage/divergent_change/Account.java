import java.util.ArrayList;
import java.util.List;

public class Account {
    protected String owner;
    protected double balance;
    private final List<String> history = new ArrayList<>();
    private int transactionsToday;
    private double dailyLimit;

    public Account(String owner, double balance) {
        this.owner = owner;
        this.balance = balance;
        this.dailyLimit = 500;
    }

    public void deposit(double amount) {
        balance += amount;
        history.add("deposit " + amount);
    }

    public String statement() {
        return owner + ": " + balance + " " + history;
    }

    public boolean canSpend(double amount) {
        return transactionsToday < 5 && amount <= dailyLimit;
    }

    public void resetDay(double limit) {
        transactionsToday = 0;
        dailyLimit = limit;
    }

    public double monthlyFee() {
        if (this instanceof SavingsAccount s) {
            return s.minimum > balance ? s.rate * 100 : 0;
        }
        return 2.5;
    }
}

public class SavingsAccount extends Account {
    double rate;
    double minimum;

    public SavingsAccount(String owner, double rate) {
        super(owner, 0);
        this.rate = rate;
        this.minimum = 100;
    }

    public void addInterest() {
        balance += balance * rate;
    }

    public boolean belowMinimum() {
        return balance < minimum;
    }

    public double projected(int years) {
        double value = balance;
        for (int i = 0; i < years; i++) {
            value += value * rate;
        }
        return value;
    }
}

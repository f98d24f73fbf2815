public class Main {
    public static void main(String[] args) {
        Bank bank = new Bank();
        bank.open("alice").deposit(1000);
        bank.open("bob");
        bank.transfer("alice", "bob", 250);
        System.out.println(bank.totalCents());
    }
}

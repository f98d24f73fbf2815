public class Player {
    private final String name;
    private int score;

    public Player(String name) {
        this.name = name;
    }

    public void takeTurn(Die die) {
        int first = die.roll();
        int second = die.roll();
        score += first == second ? 2 * (first + second) : first + second;
    }

    public boolean beats(Player other) {
        return score > other.score;
    }

    public String getName() {
        return name;
    }
}

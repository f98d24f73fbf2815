import java.util.Random;

public class Game {
    private final Die die;
    private final Player left;
    private final Player right;

    public Game(Die die, Player left, Player right) {
        this.die = die;
        this.left = left;
        this.right = right;
    }

    public Player play(int rounds) {
        for (int i = 0; i < rounds; i++) {
            left.takeTurn(die);
            right.takeTurn(die);
        }
        return left.beats(right) ? left : right;
    }

    public static void main(String[] args) {
        Game g = new Game(new Die(new Random(7), 6), new Player("ann"), new Player("ben"));
        System.out.println(g.play(5).getName());
    }
}

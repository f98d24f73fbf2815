public class SquareShape extends Shape {
    @Override
    public double size() { return 1; }
}

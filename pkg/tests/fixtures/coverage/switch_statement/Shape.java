public class Shape {
    private final String kind;
    private final double a;
    private final double b;

    public Shape(String kind, double a, double b) {
        this.kind = kind;
        this.a = a;
        this.b = b;
    }

    public double area() {
        switch (kind) {
            case "circle":
                return Math.PI * a * a;
            case "square":
                return a * a;
            case "rectangle":
                return a * b;
            default:
                throw new IllegalArgumentException(kind);
        }
    }

    public double perimeter() {
        switch (kind) {
            case "circle":
                return 2 * Math.PI * a;
            case "square":
                return 4 * a;
            case "rectangle":
                return 2 * (a + b);
            default:
                throw new IllegalArgumentException(kind);
        }
    }

    public String describe() {
        return kind + " with area " + area();
    }
}

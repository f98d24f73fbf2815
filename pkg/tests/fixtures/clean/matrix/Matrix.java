public class Matrix {
    private final double[][] cells;

    public Matrix(double[][] cells) {
        this.cells = cells;
    }

    public Matrix times(Matrix other) {
        int n = cells.length;
        int m = other.cells[0].length;
        double[][] out = new double[n][m];
        for (int i = 0; i < n; i++) {
            for (int j = 0; j < m; j++) {
                for (int k = 0; k < other.cells.length; k++) {
                    out[i][j] += cells[i][k] * other.cells[k][j];
                }
            }
        }
        return new Matrix(out);
    }

    public Matrix transpose() {
        double[][] out = new double[cells[0].length][cells.length];
        for (int i = 0; i < cells.length; i++) {
            for (int j = 0; j < cells[0].length; j++) {
                out[j][i] = cells[i][j];
            }
        }
        return new Matrix(out);
    }

    public double trace() {
        double sum = 0;
        for (int i = 0; i < Math.min(cells.length, cells[0].length); i++) {
            sum += cells[i][i];
        }
        return sum;
    }

    public static void main(String[] args) {
        Matrix a = new Matrix(new double[][] {{1, 2}, {3, 4}});
        System.out.println(a.times(a.transpose()).trace());
    }
}

public class Payroll {
    public static final int HOURLY = 0;
    public static final int SALARIED = 1;
    public static final int COMMISSIONED = 2;

    private final int employeeType;
    private final double rate;
    private double hours;
    private double sales;

    public Payroll(int employeeType, double rate) {
        this.employeeType = employeeType;
        this.rate = rate;
    }

    public void record(double hoursWorked, double salesMade) {
        hours += hoursWorked;
        sales += salesMade;
    }

    public String payslip(String name) {
        StringBuilder out = new StringBuilder();
        out.append("Payslip for ").append(name).append("\n");
        double gross;
        switch (employeeType) {
            case HOURLY:
                double base = Math.min(hours, 40) * rate;
                double overtime = Math.max(0, hours - 40) * rate * 1.5;
                gross = base + overtime;
                out.append("Hourly: ").append(hours).append(" h\n");
                break;
            case SALARIED:
                gross = rate / 12;
                out.append("Salaried\n");
                break;
            case COMMISSIONED:
                gross = rate / 12 + sales * 0.1;
                out.append("Commission on ").append(sales).append("\n");
                break;
            default:
                gross = 0;
                out.append("Unknown type\n");
        }
        double tax = gross * 0.2;
        double pension = gross * 0.05;
        double net = gross - tax - pension;
        out.append("Gross: ").append(gross).append("\n");
        out.append("Tax: ").append(tax).append("\n");
        out.append("Pension: ").append(pension).append("\n");
        out.append("Net: ").append(net).append("\n");
        return out.toString();
    }

    public double annualCost() {
        return rate * 1.1;
    }
}

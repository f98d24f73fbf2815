import java.util.List;
import java.util.Locale;

public class ReportPrinter {
    private int printed;

    public String format(String title, String author, int year, List<String> tags, Locale locale) {
        StringBuilder sb = new StringBuilder();
        sb.append(title.toUpperCase(locale)).append(" by ").append(author);
        sb.append(" (").append(year).append(")");
        for (String tag : tags) {
            sb.append(" #").append(tag.toLowerCase(locale));
        }
        printed++;
        return sb.toString();
    }

    public String format(String title, String author, int year, List<String> tags, Locale locale, List<String> notes) {
        StringBuilder sb = new StringBuilder();
        sb.append(title.toUpperCase(locale)).append(" by ").append(author);
        sb.append(" (").append(year).append(")");
        for (String tag : tags) {
            sb.append(" #").append(tag.toLowerCase(locale));
        }
        printed++;
        return sb.toString() + "\n" + String.join("\n", notes);
    }

    public int getPrinted() {
        return printed;
    }
}

public class OfficeHub implements Machine {
    private int jobs;

    @Override public void print(String doc) { jobs += doc.length(); }
    @Override public void scan(String doc) { jobs += doc.length(); }
    @Override public void fax(String doc) { jobs += doc.length(); }
    @Override public void staple(String doc) { jobs += doc.length(); }
    @Override public void copy(String doc) { jobs += 2 * doc.length(); }
    @Override public void email(String doc) { jobs += 3 * doc.length(); }
}

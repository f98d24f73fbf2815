public class CsvExporter implements Exporter {
    @Override
    public String export(String data) {
        return data.replace(' ', ',');
    }

    public static void main(String[] args) {
        Exporter e = new CsvExporter();
        System.out.println(e.export("a b c"));
    }
}

import java.util.Map;
import java.util.TreeMap;

public class WordCounter {
    private final Map<String, Integer> counts = new TreeMap<>();

    public void feed(String line) {
        for (String word : line.toLowerCase().split("\\W+")) {
            if (!word.isEmpty()) {
                counts.merge(word, 1, Integer::sum);
            }
        }
    }

    public String mostCommon() {
        String best = null;
        int bestCount = 0;
        for (Map.Entry<String, Integer> e : counts.entrySet()) {
            if (e.getValue() > bestCount) {
                best = e.getKey();
                bestCount = e.getValue();
            }
        }
        return best;
    }

    public static void main(String[] args) {
        WordCounter wc = new WordCounter();
        wc.feed("the cat and the hat");
        System.out.println(wc.mostCommon());
    }
}

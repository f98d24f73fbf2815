import java.util.ArrayList;
import java.util.List;

public class Catalog {
    private final List<Book> books = new ArrayList<>();

    public void add(Book book) {
        books.add(book);
    }

    public Book find(String isbn) {
        for (Book b : books) {
            if (b.getIsbn().equals(isbn)) {
                return b;
            }
        }
        return null;
    }

    public int available() {
        int n = 0;
        for (Book b : books) {
            if (b.isAvailable()) {
                n++;
            }
        }
        return n;
    }

    public static void main(String[] args) {
        Catalog c = new Catalog();
        c.add(new Book("978-0", "Dune"));
        c.find("978-0").lendTo("sam");
        System.out.println(c.available());
    }
}

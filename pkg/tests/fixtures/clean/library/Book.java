public class Book {
    private final String isbn;
    private final String title;
    private String borrower;

    public Book(String isbn, String title) {
        this.isbn = isbn;
        this.title = title;
    }

    public boolean lendTo(String member) {
        if (borrower != null) {
            return false;
        }
        borrower = member;
        return true;
    }

    public void giveBack() {
        borrower = null;
    }

    public boolean isAvailable() {
        return borrower == null;
    }

    public String getIsbn() {
        return isbn;
    }

    @Override
    public String toString() {
        return title + " (" + isbn + ")";
    }
}

public interface Machine {
    void print(String doc);
    void scan(String doc);
    void fax(String doc);
    void staple(String doc);
    void copy(String doc);
    void email(String doc);
}

public class Customer {
    private String name;
    private String street;
    private String zip;
    private String city;

    public String getName() { return name; }
    public String getStreet() { return street; }
    public String getZip() { return zip; }
    public String getCity() { return city; }
    public boolean isLocal() { return city.equals("Lisbon") && zip.startsWith("1"); }
    public String greeting() { return "Dear " + name; }
    public String where() { return street + ", " + city; }
}

public class Brackets {
    private final Stack<Character> open = new Stack<>();

    public boolean balanced(String text) {
        for (char c : text.toCharArray()) {
            if (c == '(' || c == '[') {
                open.push(c);
            } else if (c == ')' || c == ']') {
                if (open.isEmpty()) {
                    return false;
                }
                char top = open.pop();
                if ((c == ')') != (top == '(')) {
                    return false;
                }
            }
        }
        return open.isEmpty();
    }

    public static void main(String[] args) {
        System.out.println(new Brackets().balanced("([()])"));
    }
}

package fx;

public class Color {
    int r, g, b;

    public static Color parse(String hex) {
        Color c = new Color();
        c.r = Integer.parseInt(hex.substring(1, 3), 16);
        return c;
    }
}

package fx;

public class Style {
    Color fill;
    Color stroke;
    int width;
}

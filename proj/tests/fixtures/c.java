/** Child widgets. */
public class C extends P {
  public int m(int widget) { return widget + 1; }
}

/** Accepts positive input. */
public class Base {
  /**
   * Processes a value.
   * @require (x > 0) positive
   * @ensure (r >= 0) result non-negative
   */
  public int process(int x) { return x; }
}

/** Accepts almost-positive input. */
public class Extended extends Base {
  /**
   * Processes, taking two.
   * @require (x > -1) nearly positive
   * @ensure (r <= 10) bounded above
   */
  public int process(int x) { return x + 1; }
}

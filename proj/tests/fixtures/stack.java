/** Stack implementation. */
public class STACK {
  /**
   * Pushes an element.
   * @require (n >= 0) count stays non-negative
   */
  public void push(int n) { }
}

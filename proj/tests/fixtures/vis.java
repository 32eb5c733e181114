/** Visible things. */
public class Vis {
  /**
   * Public api.
   * @review(private) kiniry internal note
   */
  public void api() { }

  /** Hidden helper. */
  private void secret() { }
}

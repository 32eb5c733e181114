/**
 * Debugging facilities for threaded systems.
 */

package idebug.examples;

/**
 * Per-thread debugging switchboard.
 */
public class Debug
{
  /**
   * Returns a boolean indicating whether any debugging
   * facilities are turned off for a particular thread.
   *
   * @concurrency GUARDED
   * @require (thread != null) Parameters must be valid.
   * @modify QUERY
   * @param thread we are checking the debugging condition
   * of this thread.
   * @return a boolean indicating whether any debugging
   * facilities are turned off for the specified thread.
   * @review kiniry Are the isOff() methods necessary at all?
   **/

   public synchronized boolean isOff(Thread thread)
   {
     return (!isOn(thread));
   }
}

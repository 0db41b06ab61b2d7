/** Trailing-edge debounce; suggestion fetches wait until the user stops
 * typing for the configured delay (the sidebar uses 1000 ms). */

export const SUGGESTION_DEBOUNCE_MS = 1000;

type Scheduler = (callback: () => void, ms: number) => unknown;
type Canceller = (handle: unknown) => void;

export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  ms: number = SUGGESTION_DEBOUNCE_MS,
  schedule: Scheduler = setTimeout,
  cancel: Canceller = clearTimeout as Canceller,
): (...args: A) => void {
  let handle: unknown = null;
  return (...args: A) => {
    if (handle !== null) {
      cancel(handle);
    }
    handle = schedule(() => {
      handle = null;
      fn(...args);
    }, ms);
  };
}

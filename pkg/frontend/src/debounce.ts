// Trailing-edge debounce with cancellation. A delay of zero (or less)
// invokes synchronously, which keeps tests free of timer juggling.

export interface Debounced<A extends unknown[]> {
  (...args: A): void;
  cancel(): void;
}

export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  delayMs: number,
): Debounced<A> {
  let pending: ReturnType<typeof setTimeout> | null = null;

  const wrapped = ((...args: A) => {
    if (delayMs <= 0) {
      fn(...args);
      return;
    }
    if (pending !== null) {
      clearTimeout(pending);
    }
    pending = setTimeout(() => {
      pending = null;
      fn(...args);
    }, delayMs);
  }) as Debounced<A>;

  wrapped.cancel = () => {
    if (pending !== null) {
      clearTimeout(pending);
      pending = null;
    }
  };
  return wrapped;
}

// Monotonic token gate: only the response belonging to the newest request
// may touch the DOM; anything slower is discarded, so out-of-order arrival
// can never overwrite fresh results with stale ones.

export class LatestGate {
  private seq = 0;

  next(): number {
    return ++this.seq;
  }

  isCurrent(token: number): boolean {
    return token === this.seq;
  }
}

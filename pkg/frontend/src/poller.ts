// Polling loop with staleness tracking. The gateway stamps every payload
// with a data-version token; if the token stops changing for more than
// twice the refresh interval the view is flagged stale.

export interface PollResult<T> {
  payload: T;
  stale: boolean;
}

export class Poller<T extends { version: string }> {
  private timer: ReturnType<typeof setInterval> | null = null;
  private inFlight = false;
  private lastVersion: string | null = null;
  private lastChangeAt = 0;

  constructor(
    private fetchPayload: () => Promise<T>,
    private deliver: (result: PollResult<T>) => void,
    private onError: (err: unknown) => void,
    private refreshSeconds: number,
    private now: () => number = Date.now,
  ) {
    if (refreshSeconds < 1) {
      throw new Error("refreshSeconds must be >= 1");
    }
  }

  get intervalMs(): number {
    return this.refreshSeconds * 1000;
  }

  start(): void {
    void this.tick();
    this.timer = setInterval(() => void this.tick(), this.intervalMs);
  }

  stop(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }

  /** One poll; never overlapping (one in-flight request at a time). */
  async tick(): Promise<void> {
    if (this.inFlight) return;
    this.inFlight = true;
    try {
      const payload = await this.fetchPayload();
      if (payload.version !== this.lastVersion) {
        this.lastVersion = payload.version;
        this.lastChangeAt = this.now();
      }
      this.deliver({ payload, stale: this.isStale() });
    } catch (err) {
      this.onError(err);
    } finally {
      this.inFlight = false;
    }
  }

  isStale(): boolean {
    if (this.lastVersion === null) return false;
    return this.now() - this.lastChangeAt > 2 * this.intervalMs;
  }
}

/** Trailing-edge debouncer: runs the latest op once input goes quiet. */
export class Debouncer {
  private handle: ReturnType<typeof setTimeout> | undefined;

  constructor(readonly waitMs: number = 250) {}

  schedule(op: () => void): void {
    if (this.handle !== undefined) clearTimeout(this.handle);
    this.handle = setTimeout(() => {
      this.handle = undefined;
      op();
    }, this.waitMs);
  }

  cancel(): void {
    if (this.handle !== undefined) clearTimeout(this.handle);
    this.handle = undefined;
  }
}

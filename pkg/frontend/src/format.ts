export function pct(x: number): string {
  return `${(100 * x).toFixed(2)}%`;
}

export function ratio(x: number | null): string {
  return x === null ? "—" : x.toFixed(2);
}

export function balance(x: number): string {
  return x.toFixed(4);
}

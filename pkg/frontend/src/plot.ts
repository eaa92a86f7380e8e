/** Small deterministic plotting helpers on top of the PDF writer. */

import { PdfPage, Rgb } from "./pdf.js";

export interface Box {
  x: number;
  y: number;
  w: number;
  h: number;
}

export const BLACK: Rgb = [0, 0, 0];
export const GREY: Rgb = [0.55, 0.55, 0.55];

const PALETTE: Rgb[] = [
  [0.12, 0.35, 0.75],
  [0.85, 0.2, 0.15],
  [0.95, 0.6, 0.1],
  [0.15, 0.6, 0.25],
  [0.55, 0.25, 0.65],
  [0.35, 0.35, 0.35],
];

const SERIES_COLOR: Record<string, Rgb> = {
  "harp-u": PALETTE[0],
  naive: PALETTE[1],
  beep: PALETTE[2],
  "harp-a": PALETTE[3],
  "harp-a+beep": PALETTE[4],
};

export function seriesColor(name: string, index: number): Rgb {
  return SERIES_COLOR[name] ?? PALETTE[index % PALETTE.length];
}

export interface AxesOptions {
  xLog?: boolean;
  title?: string;
  xLabel?: string;
  yLabel?: string;
}

export class Axes {
  readonly page: PdfPage;
  readonly box: Box;
  readonly xMin: number;
  readonly xMax: number;
  readonly yMin: number;
  readonly yMax: number;
  readonly opts: AxesOptions;

  constructor(page: PdfPage, box: Box, xRange: [number, number], yRange: [number, number], opts: AxesOptions = {}) {
    this.page = page;
    this.box = box;
    this.opts = opts;
    const pad = (lo: number, hi: number): [number, number] => (lo === hi ? [lo - 1, hi + 1] : [lo, hi]);
    const xr: [number, number] = opts.xLog ? [Math.log10(xRange[0]), Math.log10(xRange[1])] : xRange;
    [this.xMin, this.xMax] = pad(xr[0], xr[1]);
    [this.yMin, this.yMax] = pad(yRange[0], yRange[1]);
  }

  tx(x: number): number {
    const v = this.opts.xLog ? Math.log10(x) : x;
    return this.box.x + ((v - this.xMin) / (this.xMax - this.xMin)) * this.box.w;
  }

  ty(y: number): number {
    return this.box.y + ((y - this.yMin) / (this.yMax - this.yMin)) * this.box.h;
  }

  frame(xTicks: number[], yTicks: number[], xFmt: (v: number) => string = String, yFmt: (v: number) => string = String): void {
    const { page, box } = this;
    page.setStroke(BLACK);
    page.setLineWidth(0.8);
    page.rect(box.x, box.y, box.w, box.h);
    page.setFill(BLACK);
    for (const t of xTicks) {
      const px = this.tx(t);
      page.line(px, box.y, px, box.y - 3);
      const label = xFmt(t);
      page.text(px - PdfPage.textWidth(label, 7) / 2, box.y - 11, 7, label);
    }
    for (const t of yTicks) {
      const py = this.ty(t);
      page.line(box.x, py, box.x - 3, py);
      const label = yFmt(t);
      page.text(box.x - 5 - PdfPage.textWidth(label, 7), py - 2.5, 7, label);
    }
    if (this.opts.title) {
      page.text(box.x + box.w / 2 - PdfPage.textWidth(this.opts.title, 8) / 2, box.y + box.h + 5, 8, this.opts.title);
    }
    if (this.opts.xLabel) {
      page.text(box.x + box.w / 2 - PdfPage.textWidth(this.opts.xLabel, 8) / 2, box.y - 24, 8, this.opts.xLabel);
    }
    if (this.opts.yLabel) {
      page.text(box.x - 38, box.y + box.h + 5, 8, this.opts.yLabel);
    }
  }

  series(points: { x: number; y: number }[], color: Rgb, markers = false): void {
    this.page.setStroke(color);
    this.page.setLineWidth(1.0);
    this.page.polyline(points.map((p) => [this.tx(p.x), this.ty(p.y)] as [number, number]));
    if (markers) {
      this.page.setFill(color);
      for (const p of points) {
        this.page.marker(this.tx(p.x), this.ty(p.y));
      }
    }
  }
}

export function legend(page: PdfPage, x: number, y: number, entries: [string, Rgb][]): void {
  let cursor = x;
  for (const [name, color] of entries) {
    page.setFill(color);
    page.fillRect(cursor, y, 10, 6);
    page.setFill(BLACK);
    page.text(cursor + 13, y, 7, name);
    cursor += 24 + PdfPage.textWidth(name, 7);
  }
}

export function quartiles(sorted: number[]): [number, number, number] {
  const q = (p: number): number => {
    const pos = (sorted.length - 1) * p;
    const lo = Math.floor(pos);
    const hi = Math.ceil(pos);
    return sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo);
  };
  return [q(0.25), q(0.5), q(0.75)];
}

/** Box-and-whisker glyph used by the distribution figures. */
export function drawBox(page: PdfPage, axes: Axes, centerX: number, halfWidth: number, values: number[], color: Rgb): void {
  const sorted = [...values].sort((a, b) => a - b);
  const [q1, q2, q3] = quartiles(sorted);
  const lo = sorted[0];
  const hi = sorted[sorted.length - 1];
  const cx = axes.tx(centerX);
  const w = halfWidth;
  page.setStroke(color);
  page.setLineWidth(1.0);
  page.rect(cx - w, axes.ty(q1), 2 * w, Math.max(axes.ty(q3) - axes.ty(q1), 0.4));
  page.line(cx - w, axes.ty(q2), cx + w, axes.ty(q2));
  page.line(cx, axes.ty(q3), cx, axes.ty(hi));
  page.line(cx, axes.ty(q1), cx, axes.ty(lo));
  page.line(cx - w / 2, axes.ty(hi), cx + w / 2, axes.ty(hi));
  page.line(cx - w / 2, axes.ty(lo), cx + w / 2, axes.ty(lo));
}

/** Gaussian-kernel violin; callers fall back to drawBox for small samples. */
export function drawViolin(page: PdfPage, axes: Axes, centerX: number, halfWidth: number, values: number[], color: Rgb): void {
  const sorted = [...values].sort((a, b) => a - b);
  const n = sorted.length;
  const mean = sorted.reduce((a, b) => a + b, 0) / n;
  const sd = Math.sqrt(sorted.reduce((a, b) => a + (b - mean) ** 2, 0) / n);
  const [q1, , q3] = quartiles(sorted);
  const iqr = q3 - q1;
  const bw = 0.9 * Math.min(sd || Infinity, iqr / 1.34 || Infinity) * n ** -0.2;
  if (!Number.isFinite(bw) || bw <= 0) {
    drawBox(page, axes, centerX, halfWidth, values, color);
    return;
  }
  const lo = sorted[0] - 2 * bw;
  const hi = sorted[n - 1] + 2 * bw;
  const steps = 40;
  const density: number[] = [];
  for (let i = 0; i <= steps; i++) {
    const y = lo + ((hi - lo) * i) / steps;
    let sum = 0;
    for (const v of sorted) {
      const u = (y - v) / bw;
      sum += Math.exp(-0.5 * u * u);
    }
    density.push(sum / (n * bw * Math.sqrt(2 * Math.PI)));
  }
  const peak = Math.max(...density);
  const cx = axes.tx(centerX);
  const right: [number, number][] = density.map((d, i) => [
    cx + (d / peak) * halfWidth,
    axes.ty(lo + ((hi - lo) * i) / steps),
  ]);
  const left: [number, number][] = density
    .map((d, i) => [cx - (d / peak) * halfWidth, axes.ty(lo + ((hi - lo) * i) / steps)] as [number, number])
    .reverse();
  page.setFill(color);
  page.fillPolygon([...right, ...left]);
  page.setStroke(BLACK);
  const median = quartiles(sorted)[1];
  page.line(cx - halfWidth, axes.ty(median), cx + halfWidth, axes.ty(median));
}

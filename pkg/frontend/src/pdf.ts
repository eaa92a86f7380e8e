/** Minimal deterministic PDF writer.
 *
 * Vector strokes, filled shapes and Helvetica text are all the figures need,
 * and emitting the file by hand keeps the output byte-stable: no timestamps,
 * no IDs, no library version churn.
 */

export type Rgb = [number, number, number];

const fmt = (v: number): string => {
  const s = v.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
};

const escapeText = (s: string): string =>
  s.replace(/\\/g, "\\\\").replace(/\(/g, "\\(").replace(/\)/g, "\\)");

export class PdfPage {
  readonly width: number;
  readonly height: number;
  private ops: string[] = [];

  constructor(width = 792, height = 612) {
    this.width = width;
    this.height = height;
  }

  setStroke([r, g, b]: Rgb): void {
    this.ops.push(`${fmt(r)} ${fmt(g)} ${fmt(b)} RG`);
  }

  setFill([r, g, b]: Rgb): void {
    this.ops.push(`${fmt(r)} ${fmt(g)} ${fmt(b)} rg`);
  }

  setLineWidth(w: number): void {
    this.ops.push(`${fmt(w)} w`);
  }

  polyline(points: [number, number][]): void {
    if (points.length < 2) return;
    const [x0, y0] = points[0];
    const parts = [`${fmt(x0)} ${fmt(y0)} m`];
    for (let i = 1; i < points.length; i++) {
      parts.push(`${fmt(points[i][0])} ${fmt(points[i][1])} l`);
    }
    parts.push("S");
    this.ops.push(parts.join(" "));
  }

  line(x1: number, y1: number, x2: number, y2: number): void {
    this.polyline([
      [x1, y1],
      [x2, y2],
    ]);
  }

  rect(x: number, y: number, w: number, h: number): void {
    this.ops.push(`${fmt(x)} ${fmt(y)} ${fmt(w)} ${fmt(h)} re S`);
  }

  fillRect(x: number, y: number, w: number, h: number): void {
    this.ops.push(`${fmt(x)} ${fmt(y)} ${fmt(w)} ${fmt(h)} re f`);
  }

  fillPolygon(points: [number, number][]): void {
    if (points.length < 3) return;
    const [x0, y0] = points[0];
    const parts = [`${fmt(x0)} ${fmt(y0)} m`];
    for (let i = 1; i < points.length; i++) {
      parts.push(`${fmt(points[i][0])} ${fmt(points[i][1])} l`);
    }
    parts.push("f");
    this.ops.push(parts.join(" "));
  }

  /** Small filled square marker centred on (x, y). */
  marker(x: number, y: number, size = 2.2): void {
    this.fillRect(x - size / 2, y - size / 2, size, size);
  }

  text(x: number, y: number, size: number, content: string): void {
    this.ops.push(`BT /F1 ${fmt(size)} Tf ${fmt(x)} ${fmt(y)} Td (${escapeText(content)}) Tj ET`);
  }

  /** Rough width of Helvetica text, good enough for centring labels. */
  static textWidth(content: string, size: number): number {
    return content.length * size * 0.55;
  }

  content(): string {
    return this.ops.join("\n");
  }
}

export function buildPdf(pages: PdfPage[]): Buffer {
  if (pages.length === 0) {
    throw new Error("a PDF needs at least one page");
  }
  const objects: string[] = [];
  const kidIds = pages.map((_, i) => 4 + 2 * i);
  objects.push(`<< /Type /Catalog /Pages 2 0 R >>`);
  objects.push(
    `<< /Type /Pages /Kids [${kidIds.map((id) => `${id} 0 R`).join(" ")}] /Count ${pages.length} >>`
  );
  objects.push(`<< /Type /Font /Subtype /Type1 /BaseFont /Helvetica >>`);
  for (const page of pages) {
    const pageId = objects.length + 1; // this page object's id after the push
    objects.push(
      `<< /Type /Page /Parent 2 0 R /MediaBox [0 0 ${fmt(page.width)} ${fmt(page.height)}] ` +
        `/Resources << /Font << /F1 3 0 R >> >> /Contents ${pageId + 1} 0 R >>`
    );
    const stream = page.content();
    objects.push(`<< /Length ${Buffer.byteLength(stream, "utf-8")} >>\nstream\n${stream}\nendstream`);
  }

  let body = "%PDF-1.4\n";
  const offsets: number[] = [];
  objects.forEach((obj, index) => {
    offsets.push(Buffer.byteLength(body, "utf-8"));
    body += `${index + 1} 0 obj\n${obj}\nendobj\n`;
  });
  const xrefStart = Buffer.byteLength(body, "utf-8");
  body += `xref\n0 ${objects.length + 1}\n`;
  body += "0000000000 65535 f \n";
  for (const offset of offsets) {
    body += `${offset.toString().padStart(10, "0")} 00000 n \n`;
  }
  body += `trailer\n<< /Size ${objects.length + 1} /Root 1 0 R >>\nstartxref\n${xrefStart}\n%%EOF\n`;
  return Buffer.from(body, "utf-8");
}

/** CSV reader for the simulator's output files.
 *
 * Files start with '#' comment lines recording the run configuration,
 * followed by a header row and one record per line.
 */

export interface CsvTable {
  columns: string[];
  rows: Record<string, string>[];
}

export class CsvError extends Error {}

export function parseCsv(text: string): CsvTable {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0 && !line.startsWith("#"));
  if (lines.length === 0) {
    throw new CsvError("input has no header row");
  }
  const columns = lines[0].split(",");
  const rows: Record<string, string>[] = [];
  for (let i = 1; i < lines.length; i++) {
    const parts = lines[i].split(",");
    if (parts.length !== columns.length) {
      throw new CsvError(`row ${i} has ${parts.length} fields, header has ${columns.length}`);
    }
    const row: Record<string, string> = {};
    columns.forEach((name, j) => (row[name] = parts[j]));
    rows.push(row);
  }
  return { columns, rows };
}

/** Throws naming every missing column, and on a data-less file. */
export function requireColumns(table: CsvTable, names: string[]): void {
  const missing = names.filter((name) => !table.columns.includes(name));
  if (missing.length > 0) {
    throw new CsvError(`missing required column(s): ${missing.join(", ")}`);
  }
  if (table.rows.length === 0) {
    throw new CsvError("input contains a header but no data rows");
  }
}

export function num(row: Record<string, string>, name: string): number {
  const value = Number(row[name]);
  if (Number.isNaN(value)) {
    throw new CsvError(`column ${name} holds non-numeric value ${JSON.stringify(row[name])}`);
  }
  return value;
}

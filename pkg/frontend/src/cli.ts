#!/usr/bin/env node
/** render_figures <figure-id> --in <csv> --out <pdf> [--dump-points <json>] */

import { readFileSync, writeFileSync } from "node:fs";
import { CsvError, parseCsv } from "./csv.js";
import { FIGURE_IDS, buildFigure } from "./figures.js";
import { buildPdf } from "./pdf.js";

export interface CliOptions {
  figureId: string;
  input: string;
  output: string;
  dumpPoints?: string;
}

export function parseArgs(argv: string[]): CliOptions {
  if (argv.length === 0) {
    throw new CsvError(`usage: render_figures <figure-id> --in <csv> --out <pdf> [--dump-points <json>]`);
  }
  const [figureId, ...rest] = argv;
  let input: string | undefined;
  let output: string | undefined;
  let dumpPoints: string | undefined;
  for (let i = 0; i < rest.length; i += 2) {
    const flag = rest[i];
    const value = rest[i + 1];
    if (value === undefined) {
      throw new CsvError(`flag ${flag} needs a value`);
    }
    if (flag === "--in") input = value;
    else if (flag === "--out") output = value;
    else if (flag === "--dump-points") dumpPoints = value;
    else throw new CsvError(`unknown flag ${flag}`);
  }
  if (!input || !output) {
    throw new CsvError("both --in and --out are required");
  }
  return { figureId, input, output, dumpPoints };
}

export function runCli(argv: string[]): number {
  let options: CliOptions;
  try {
    options = parseArgs(argv);
  } catch (error) {
    console.error(`render_figures: ${(error as Error).message}`);
    console.error(`figure ids: ${FIGURE_IDS.join(", ")}`);
    return 1;
  }
  try {
    const table = parseCsv(readFileSync(options.input, "utf-8"));
    const figure = buildFigure(options.figureId, table);
    writeFileSync(options.output, buildPdf(figure.pages));
    if (options.dumpPoints) {
      writeFileSync(options.dumpPoints, JSON.stringify(figure.points, null, 1) + "\n");
    }
    console.error(
      `render_figures: wrote ${options.output} (${figure.points.length} points from ${table.rows.length} rows)`
    );
    return 0;
  } catch (error) {
    console.error(`render_figures: ${(error as Error).message}`);
    return 1;
  }
}

const entry = process.argv[1] ?? "";
if (entry.endsWith("cli.js") || entry.endsWith("render_figures")) {
  process.exit(runCli(process.argv.slice(2)));
}

import { existsSync, mkdtempSync, readFileSync, statSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { parseArgs, runCli } from "../src/cli.js";

const scratch = () => mkdtempSync(join(tmpdir(), "render-figures-"));

describe("argument parsing", () => {
  it("accepts the documented grammar", () => {
    const options = parseArgs(["wasted-capacity", "--in", "a.csv", "--out", "b.pdf"]);
    expect(options).toEqual({ figureId: "wasted-capacity", input: "a.csv", output: "b.pdf", dumpPoints: undefined });
  });

  it("rejects missing flags and unknown flags", () => {
    expect(() => parseArgs(["wasted-capacity", "--in", "a.csv"])).toThrow(/--out/);
    expect(() => parseArgs(["wasted-capacity", "--frob", "x"])).toThrow(/unknown flag/);
    expect(() => parseArgs([])).toThrow(/usage/);
  });
});

describe("end to end", () => {
  it("writes a PDF and a dump-points file, leaving the input untouched", () => {
    const dir = scratch();
    const out = join(dir, "wasted.pdf");
    const dump = join(dir, "points.json");
    const before = readFileSync("testdata/wasted.csv");
    const status = runCli([
      "wasted-capacity",
      "--in", "testdata/wasted.csv",
      "--out", out,
      "--dump-points", dump,
    ]);
    expect(status).toBe(0);
    expect(statSync(out).size).toBeGreaterThan(500);
    expect(readFileSync(out).subarray(0, 5).toString()).toBe("%PDF-");
    const points = JSON.parse(readFileSync(dump, "utf-8"));
    expect(points.length).toBeGreaterThan(0);
    expect(points[0]).toHaveProperty("figure", "wasted-capacity");
    expect(readFileSync("testdata/wasted.csv").equals(before)).toBe(true);
  });

  it("fails without writing a PDF when the input is header-only", () => {
    const dir = scratch();
    const emptyCsv = join(dir, "empty.csv");
    const out = join(dir, "out.pdf");
    writeFileSync(emptyCsv, "granularity,raw_ber,wasted_fraction\n");
    const status = runCli(["wasted-capacity", "--in", emptyCsv, "--out", out]);
    expect(status).toBe(1);
    expect(existsSync(out)).toBe(false);
  });

  it("fails on a missing input file", () => {
    const dir = scratch();
    const status = runCli(["wasted-capacity", "--in", join(dir, "nope.csv"), "--out", join(dir, "x.pdf")]);
    expect(status).toBe(1);
  });

  it("fails on an unknown figure id", () => {
    const dir = scratch();
    const status = runCli(["pie-chart", "--in", "testdata/wasted.csv", "--out", join(dir, "x.pdf")]);
    expect(status).toBe(1);
  });
});

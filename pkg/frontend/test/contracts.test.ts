import { readFileSync } from "node:fs";
import { resolve } from "node:path";

import { describe, expect, it } from "vitest";

import {
  ContractError,
  parseComparisonJson,
  parseSaddleGridCsv,
  parseSweepCsv,
} from "../src/contracts.js";

const data = (name: string) => readFileSync(resolve(__dirname, "../testdata", name), "utf8");

describe("sweep CSV parsing", () => {
  it("reads rows, Monte Carlo columns, and the footer", () => {
    const sweep = parseSweepCsv(data("sweep_setting2.csv"));
    expect(sweep.rows.length).toBe(21);
    expect(sweep.argmaxParam).toBeCloseTo(-0.7071067811865476, 12);
    expect(sweep.rows[0].mc).not.toBeNull();
    expect(sweep.rows[0].stderr).toBeGreaterThan(0);
  });

  it("keeps empty Monte Carlo cells as nulls", () => {
    const sweep = parseSweepCsv(data("sweep_analytic_only.csv"));
    expect(sweep.rows.every((r) => r.mc === null && r.stderr === null)).toBe(true);
  });

  it("rejects a wrong header", () => {
    expect(() => parseSweepCsv("a,b\n1,2\n# argmax_param=1,argmin_param=1\n")).toThrow(
      ContractError,
    );
  });

  it("rejects a missing footer", () => {
    const body = data("sweep_analytic_only.csv").split("\n").slice(0, -2).join("\n");
    expect(() => parseSweepCsv(body)).toThrow(/footer/);
  });
});

describe("saddle-grid CSV parsing", () => {
  it("reshapes rows into a dense grid with the star point", () => {
    const grid = parseSaddleGridCsv(data("saddle_grid.csv"));
    expect(grid.txGains.length).toBe(41);
    expect(grid.advGains.length).toBe(41);
    expect(grid.cost.length).toBe(41);
    expect(grid.txStar).toBeCloseTo(0.7071067811865476, 12);
    expect(grid.advStar).toBeCloseTo(-0.7071067811865476, 12);
    // cost is a mean squared error: positive, bounded by the source variance
    for (const row of grid.cost) {
      for (const c of row) {
        expect(c).toBeGreaterThan(0);
        expect(c).toBeLessThanOrEqual(1.0 + 1e-12);
      }
    }
  });
});

describe("comparison JSON parsing", () => {
  it("extracts the four costs in canonical order", () => {
    const bars = parseComparisonJson(data("analytic_cfg_a.json"));
    expect(bars.map((b) => b.label)).toEqual([
      "setting 1, uncoordinated jammers",
      "setting 1, coordinated jammers",
      "setting 2",
      "separation baseline",
    ]);
    expect(bars[1].value).toBeCloseTo(0.6, 12);
    expect(bars[2].value).toBeCloseTo(5 / 6, 12);
  });

  it("rejects JSON without a coordination block", () => {
    expect(() => parseComparisonJson('{"alpha_T": 1}')).toThrow(/coordination/);
  });

  it("rejects invalid JSON", () => {
    expect(() => parseComparisonJson("not json")).toThrow(ContractError);
  });
});

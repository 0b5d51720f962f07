/**
 * Parsers for the sensorjam CLI output contracts.
 *
 * Sweep CSV:      param,analytic_cost,mc_cost,mc_stderr  (+ footer
 *                 `# argmax_param=<v>,argmin_param=<v>`); the Monte Carlo
 *                 cells may be empty (analytic-only sweep).
 * Saddle grid:    tx_gain,adv_gain,analytic_cost (+ footer
 *                 `# tx_star=<v>,adv_star=<v>`).
 * Analytic JSON:  object from `sensorjam analytic --format json`; the
 *                 comparison chart needs its `coordination` block.
 */

export class ContractError extends Error {}

export interface SweepRow {
  param: number;
  analytic: number;
  mc: number | null;
  stderr: number | null;
}

export interface SweepData {
  rows: SweepRow[];
  argmaxParam: number;
  argminParam: number;
}

export interface GridData {
  txGains: number[];
  advGains: number[];
  /** cost[i][j] for txGains[i], advGains[j] */
  cost: number[][];
  txStar: number;
  advStar: number;
}

export interface ComparisonBar {
  label: string;
  value: number;
}

const SWEEP_HEADER = "param,analytic_cost,mc_cost,mc_stderr";
const GRID_HEADER = "tx_gain,adv_gain,analytic_cost";

function num(field: string, raw: string): number {
  const value = Number(raw);
  if (raw.trim() === "" || !Number.isFinite(value)) {
    throw new ContractError(`cannot parse ${field} from ${JSON.stringify(raw)}`);
  }
  return value;
}

function footerValues(line: string, keys: string[]): number[] {
  const body = line.replace(/^#\s*/, "");
  const pairs = new Map(
    body.split(",").map((part) => {
      const [k, v] = part.split("=");
      return [k?.trim(), v] as const;
    }),
  );
  return keys.map((key) => {
    const raw = pairs.get(key);
    if (raw === undefined) throw new ContractError(`footer is missing ${key}`);
    return num(key, raw);
  });
}

export function parseSweepCsv(text: string): SweepData {
  const lines = text.trim().split(/\r?\n/);
  if (lines[0] !== SWEEP_HEADER) {
    throw new ContractError(`expected header ${SWEEP_HEADER}, got ${JSON.stringify(lines[0])}`);
  }
  const footer = lines[lines.length - 1];
  if (!footer.startsWith("#")) {
    throw new ContractError("sweep CSV is missing its argmax/argmin footer row");
  }
  const [argmaxParam, argminParam] = footerValues(footer, ["argmax_param", "argmin_param"]);
  const rows: SweepRow[] = [];
  for (const line of lines.slice(1, -1)) {
    const cells = line.split(",");
    if (cells.length !== 4) throw new ContractError(`expected 4 cells, got ${JSON.stringify(line)}`);
    const hasMc = cells[2] !== "" || cells[3] !== "";
    rows.push({
      param: num("param", cells[0]),
      analytic: num("analytic_cost", cells[1]),
      mc: hasMc ? num("mc_cost", cells[2]) : null,
      stderr: hasMc ? num("mc_stderr", cells[3]) : null,
    });
  }
  if (rows.length === 0) throw new ContractError("sweep CSV has no data rows");
  return { rows, argmaxParam, argminParam };
}

export function parseSaddleGridCsv(text: string): GridData {
  const lines = text.trim().split(/\r?\n/);
  if (lines[0] !== GRID_HEADER) {
    throw new ContractError(`expected header ${GRID_HEADER}, got ${JSON.stringify(lines[0])}`);
  }
  const footer = lines[lines.length - 1];
  if (!footer.startsWith("#")) {
    throw new ContractError("saddle-grid CSV is missing its tx_star/adv_star footer row");
  }
  const [txStar, advStar] = footerValues(footer, ["tx_star", "adv_star"]);
  const byTx = new Map<number, Map<number, number>>();
  for (const line of lines.slice(1, -1)) {
    const cells = line.split(",");
    if (cells.length !== 3) throw new ContractError(`expected 3 cells, got ${JSON.stringify(line)}`);
    const tx = num("tx_gain", cells[0]);
    const adv = num("adv_gain", cells[1]);
    const cost = num("analytic_cost", cells[2]);
    if (!byTx.has(tx)) byTx.set(tx, new Map());
    byTx.get(tx)!.set(adv, cost);
  }
  const txGains = [...byTx.keys()].sort((a, b) => a - b);
  const advGains = [...byTx.values().next().value!.keys()].sort((a, b) => a - b);
  const cost = txGains.map((tx) =>
    advGains.map((adv) => {
      const value = byTx.get(tx)!.get(adv);
      if (value === undefined) throw new ContractError(`grid hole at (${tx}, ${adv})`);
      return value;
    }),
  );
  return { txGains, advGains, cost, txStar, advStar };
}

/** The four engine costs in canonical (expected ascending) order. */
export function parseComparisonJson(text: string): ComparisonBar[] {
  let obj: unknown;
  try {
    obj = JSON.parse(text);
  } catch {
    throw new ContractError("comparison input is not valid JSON");
  }
  const coordination = (obj as { coordination?: Record<string, unknown> }).coordination;
  if (!coordination) {
    throw new ContractError("analytic JSON has no coordination block (needs K >= 1)");
  }
  const fields: [string, string][] = [
    ["setting1_uncoordinated", "setting 1, uncoordinated jammers"],
    ["setting1_coordinated", "setting 1, coordinated jammers"],
    ["setting2", "setting 2"],
    ["separation", "separation baseline"],
  ];
  return fields.map(([key, label]) => {
    const value = coordination[key];
    if (typeof value !== "number" || !Number.isFinite(value)) {
      throw new ContractError(`coordination block is missing ${key}`);
    }
    return { label, value };
  });
}

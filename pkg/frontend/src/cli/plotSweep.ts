/** Usage: node dist/cli/plotSweep.js <sweep.csv> <figure.svg|png> [--title T] */

import { parseSweepCsv } from "../contracts.js";
import { sweepFigure } from "../figures.js";
import { parseArgs, runFigure } from "./common.js";

const args = parseArgs(
  process.argv.slice(2),
  "usage: plotSweep <sweep.csv> <out.svg|out.png> [--title TITLE]",
);
await runFigure(args, (text) => sweepFigure(parseSweepCsv(text), { title: args.title }));

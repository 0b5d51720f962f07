/** Usage: node dist/cli/plotComparison.js <analytic.json> <figure.svg|png> [--title T] */

import { parseComparisonJson } from "../contracts.js";
import { comparisonFigure } from "../figures.js";
import { parseArgs, runFigure } from "./common.js";

const args = parseArgs(
  process.argv.slice(2),
  "usage: plotComparison <analytic.json> <out.svg|out.png> [--title TITLE]",
);
await runFigure(args, (text) => comparisonFigure(parseComparisonJson(text), args.title));

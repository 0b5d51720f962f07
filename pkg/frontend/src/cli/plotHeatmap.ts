/** Usage: node dist/cli/plotHeatmap.js <saddle-grid.csv> <figure.svg|png> [--title T] */

import { parseSaddleGridCsv } from "../contracts.js";
import { heatmapFigure } from "../figures.js";
import { parseArgs, runFigure } from "./common.js";

const args = parseArgs(
  process.argv.slice(2),
  "usage: plotHeatmap <saddle-grid.csv> <out.svg|out.png> [--title TITLE]",
);
await runFigure(args, (text) => heatmapFigure(parseSaddleGridCsv(text), args.title));

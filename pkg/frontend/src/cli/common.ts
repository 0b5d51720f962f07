import { readFileSync } from "node:fs";

import { ContractError } from "../contracts.js";
import { writeFigure } from "../render.js";

export interface CliArgs {
  input: string;
  output: string;
  title?: string;
}

export function parseArgs(argv: string[], usage: string): CliArgs {
  const rest: string[] = [];
  let title: string | undefined;
  for (let i = 0; i < argv.length; i++) {
    if (argv[i] === "--title") {
      title = argv[++i];
    } else {
      rest.push(argv[i]);
    }
  }
  if (rest.length !== 2) {
    process.stderr.write(usage + "\n");
    process.exit(1);
  }
  return { input: rest[0], output: rest[1], title };
}

export async function runFigure(args: CliArgs, build: (text: string) => string): Promise<void> {
  try {
    const text = readFileSync(args.input, "utf8");
    await writeFigure(build(text), args.output);
  } catch (err) {
    if (err instanceof ContractError) {
      process.stderr.write(`input does not match the expected contract: ${err.message}\n`);
    } else {
      process.stderr.write(`${(err as Error).message}\n`);
    }
    process.exit(1);
  }
}

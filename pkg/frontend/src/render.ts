/** Write an SVG string to .svg directly or rasterize to .png via sharp. */

import { writeFileSync } from "node:fs";
import { extname } from "node:path";

export async function writeFigure(svg: string, outPath: string): Promise<void> {
  const ext = extname(outPath).toLowerCase();
  if (ext === ".svg") {
    writeFileSync(outPath, svg, "utf8");
    return;
  }
  if (ext === ".png") {
    const sharp = (await import("sharp")).default;
    const buf = await sharp(Buffer.from(svg), { density: 144 }).png().toBuffer();
    writeFileSync(outPath, buf);
    return;
  }
  throw new Error(`unsupported output extension ${ext || "(none)"}; use .svg or .png`);
}

#!/usr/bin/env node
/**
 * CLI: render a figure from an experiment CSV.
 *
 *   plot --in CSV --x COL --series COL --y COL [--err COL] --out PATH [--title T]
 *
 * Exit codes: 0 on success, 2 on usage/config errors (missing columns, empty
 * CSV, unknown flags), 1 on unexpected failures.  No file is written on error.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { parseCsv } from "./csv.js";
import { buildFigure, FigureSpec, validateColumns } from "./figure.js";

const USAGE =
    "usage: plot --in CSV --x COL --series COL --y COL [--err COL] [--title TEXT] --out PATH";

interface CliArgs {
    input: string;
    out: string;
    spec: FigureSpec;
}

export function parseArgs(argv: string[]): CliArgs {
    const known = new Map<string, string>();
    const flagNames = ["--in", "--x", "--series", "--y", "--err", "--out", "--title"];
    for (let i = 0; i < argv.length; i += 2) {
        const flag = argv[i];
        if (!flagNames.includes(flag)) {
            throw new Error(`unknown flag '${flag}'\n${USAGE}`);
        }
        const value = argv[i + 1];
        if (value === undefined) {
            throw new Error(`flag '${flag}' needs a value\n${USAGE}`);
        }
        known.set(flag, value);
    }
    for (const required of ["--in", "--x", "--series", "--y", "--out"]) {
        if (!known.has(required)) {
            throw new Error(`missing required flag '${required}'\n${USAGE}`);
        }
    }
    return {
        input: known.get("--in")!,
        out: known.get("--out")!,
        spec: {
            xColumn: known.get("--x")!,
            seriesColumn: known.get("--series")!,
            yColumn: known.get("--y")!,
            errColumn: known.get("--err"),
            title: known.get("--title"),
        },
    };
}

export function runCli(argv: string[]): number {
    let args: CliArgs;
    try {
        args = parseArgs(argv);
    } catch (error) {
        console.error(String(error instanceof Error ? error.message : error));
        return 2;
    }

    let text: string;
    try {
        text = readFileSync(args.input, "utf8");
    } catch (error) {
        console.error(`cannot read ${args.input}: ${error instanceof Error ? error.message : error}`);
        return 2;
    }

    const table = parseCsv(text);
    const missing = validateColumns(table, args.spec);
    if (missing !== null) {
        console.error(`missing column '${missing}' in ${args.input}`);
        return 2;
    }
    if (table.rows.length === 0) {
        console.error(`empty CSV: ${args.input} has no data rows`);
        return 2;
    }

    let svg: string;
    try {
        svg = buildFigure(table, args.spec);
    } catch (error) {
        console.error(String(error instanceof Error ? error.message : error));
        return 1;
    }
    writeFileSync(args.out, svg);
    console.log(`wrote ${args.out}`);
    return 0;
}

const entry = process.argv[1] ?? "";
if (entry.endsWith("plot.js") || entry.endsWith("plot.ts")) {
    process.exit(runCli(process.argv.slice(2)));
}

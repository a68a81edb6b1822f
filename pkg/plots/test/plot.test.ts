import { execFileSync } from "node:child_process";
import { existsSync, mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { parseCsv } from "../src/csv.js";
import { buildFigure } from "../src/figure.js";
import { formatNumber, linearScale, ticks } from "../src/scale.js";
import { runCli } from "../src/plot.js";

const AGGREGATES = join(__dirname, "..", "testdata", "aggregates.csv");
const ESTIMATION = join(__dirname, "..", "testdata", "estimation_error.csv");

function tempDir(): string {
    return mkdtempSync(join(tmpdir(), "plots-"));
}

describe("csv parsing", () => {
    it("splits header and rows", () => {
        const table = parseCsv("a,b\n1,2\n3,4\n");
        expect(table.columns).toEqual(["a", "b"]);
        expect(table.rows).toHaveLength(2);
        expect(table.rows[1].b).toBe("4");
    });

    it("handles empty input", () => {
        expect(parseCsv("").rows).toHaveLength(0);
    });
});

describe("scales", () => {
    it("maps domain linearly", () => {
        const scale = linearScale([0, 10], [0, 100]);
        expect(scale.map(5)).toBeCloseTo(50);
    });

    it("survives degenerate domains", () => {
        const scale = linearScale([3, 3], [0, 100]);
        expect(Number.isFinite(scale.map(3))).toBe(true);
    });

    it("produces round ticks", () => {
        const t = ticks(0, 100, 6);
        expect(t).toContain(0);
        expect(t).toContain(100);
    });

    it("formats without locale surprises", () => {
        expect(formatNumber(0)).toBe("0");
        expect(formatNumber(0.9284)).toBe("0.9284");
        expect(formatNumber(2500000)).toBe("2.50e+6");
    });
});

describe("figure rendering", () => {
    it("is deterministic byte for byte", () => {
        const table = parseCsv(readFileSync(AGGREGATES, "utf8"));
        const spec = { xColumn: "T", seriesColumn: "algo", yColumn: "regret_mean", errColumn: "regret_stderr" };
        expect(buildFigure(table, spec)).toBe(buildFigure(table, spec));
    });

    it("draws one line and legend entry per series", () => {
        const table = parseCsv(readFileSync(AGGREGATES, "utf8"));
        const svg = buildFigure(table, { xColumn: "T", seriesColumn: "algo", yColumn: "cr_mean" });
        const names = new Set(table.rows.map((r) => r.algo));
        const polylines = svg.match(/<polyline /g) ?? [];
        expect(polylines).toHaveLength(names.size);
        for (const name of names) {
            expect(svg).toContain(`>${name}</text>`);
        }
    });

    it("shades error bands when an error column is given", () => {
        const table = parseCsv(readFileSync(AGGREGATES, "utf8"));
        const svg = buildFigure(table, {
            xColumn: "T",
            seriesColumn: "algo",
            yColumn: "regret_mean",
            errColumn: "regret_stderr",
        });
        expect(svg).toContain("<polygon");
    });
});

describe("cli", () => {
    it("writes the three reference figures deterministically", () => {
        const dir = tempDir();
        const figures: Array<[string, string[]]> = [
            ["regret_vs_T.svg", ["--in", AGGREGATES, "--x", "T", "--series", "algo", "--y", "regret_mean", "--err", "regret_stderr"]],
            ["cr_vs_T.svg", ["--in", AGGREGATES, "--x", "T", "--series", "algo", "--y", "cr_mean", "--err", "cr_stderr"]],
            ["estimation_error.svg", ["--in", ESTIMATION, "--x", "t", "--series", "oracle", "--y", "abs_err_mean", "--err", "abs_err_stderr"]],
        ];
        for (const [name, flags] of figures) {
            const out = join(dir, name);
            expect(runCli([...flags, "--out", out])).toBe(0);
            const first = readFileSync(out, "utf8");
            expect(runCli([...flags, "--out", out])).toBe(0);
            const second = readFileSync(out, "utf8");
            expect(second).toBe(first);
            expect(first.startsWith("<svg")).toBe(true);
        }
    });

    it("exits 2 and names the missing column", () => {
        const dir = tempDir();
        const out = join(dir, "x.svg");
        const code = runCli(["--in", AGGREGATES, "--x", "T", "--series", "algo", "--y", "nope", "--out", out]);
        expect(code).toBe(2);
        expect(existsSync(out)).toBe(false);
    });

    it("exits 2 on an empty csv and writes nothing", () => {
        const dir = tempDir();
        const empty = join(dir, "empty.csv");
        writeFileSync(empty, "a,b,c\n");
        const out = join(dir, "x.svg");
        const code = runCli(["--in", empty, "--x", "a", "--series", "b", "--y", "c", "--out", out]);
        expect(code).toBe(2);
        expect(existsSync(out)).toBe(false);
    });

    it("exits 2 on unknown flags and missing input", () => {
        expect(runCli(["--bogus", "1"])).toBe(2);
        expect(runCli(["--in", "/nonexistent.csv", "--x", "a", "--series", "b", "--y", "c", "--out", "/tmp/x.svg"])).toBe(2);
    });

    it("built bundle runs standalone", () => {
        const dir = tempDir();
        const out = join(dir, "cli.svg");
        execFileSync("node", [
            join(__dirname, "..", "dist", "plot.js"),
            "--in", AGGREGATES,
            "--x", "T",
            "--series", "algo",
            "--y", "cr_mean",
            "--out", out,
        ]);
        expect(existsSync(out)).toBe(true);
    });
});

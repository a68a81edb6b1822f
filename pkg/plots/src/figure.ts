/**
 * Render one line figure (optionally with shaded error bands) to SVG text.
 *
 * Output depends only on the input table and figure spec: fixed canvas,
 * fixed palette, series sorted by name, numbers formatted without locale
 * involvement.  Rerunning on identical inputs yields identical bytes.
 */

import { numeric, Table } from "./csv.js";
import { formatNumber, linearScale, ticks } from "./scale.js";

export interface FigureSpec {
    xColumn: string;
    seriesColumn: string;
    yColumn: string;
    errColumn?: string;
    title?: string;
}

const WIDTH = 800;
const HEIGHT = 500;
const MARGIN = { left: 70, right: 160, top: 30, bottom: 55 };

const PALETTE = [
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#9467bd",
    "#ff7f0e",
    "#8c564b",
    "#17becf",
    "#7f7f7f",
];

interface Point {
    x: number;
    y: number;
    err: number;
}

function round2(value: number): string {
    return (Math.round(value * 100) / 100).toFixed(2);
}

export function validateColumns(table: Table, spec: FigureSpec): string | null {
    const needed = [spec.xColumn, spec.seriesColumn, spec.yColumn];
    if (spec.errColumn) needed.push(spec.errColumn);
    for (const column of needed) {
        if (!table.columns.includes(column)) {
            return column;
        }
    }
    return null;
}

export function buildFigure(table: Table, spec: FigureSpec): string {
    const missing = validateColumns(table, spec);
    if (missing !== null) {
        throw new Error(`missing column '${missing}'`);
    }
    if (table.rows.length === 0) {
        throw new Error("empty CSV: no data rows");
    }

    const bySeries = new Map<string, Point[]>();
    for (const row of table.rows) {
        const name = row[spec.seriesColumn];
        const point: Point = {
            x: numeric(row, spec.xColumn),
            y: numeric(row, spec.yColumn),
            err: spec.errColumn ? numeric(row, spec.errColumn) : 0,
        };
        if (!bySeries.has(name)) bySeries.set(name, []);
        bySeries.get(name)!.push(point);
    }
    const seriesNames = [...bySeries.keys()].sort();
    for (const name of seriesNames) {
        bySeries.get(name)!.sort((a, b) => a.x - b.x);
    }

    const points = [...bySeries.values()].flat();
    const xs = points.map((p) => p.x);
    const los = points.map((p) => p.y - p.err);
    const his = points.map((p) => p.y + p.err);
    const xScale = linearScale(
        [Math.min(...xs), Math.max(...xs)],
        [MARGIN.left, WIDTH - MARGIN.right],
    );
    const pad = 0.05 * (Math.max(...his) - Math.min(...los) || 1);
    const yScale = linearScale(
        [Math.min(...los) - pad, Math.max(...his) + pad],
        [HEIGHT - MARGIN.bottom, MARGIN.top],
    );

    const parts: string[] = [];
    parts.push(
        `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
    );
    parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="#ffffff"/>`);

    // axes and grid
    const axisStyle = 'stroke="#333333" stroke-width="1"';
    const x0 = MARGIN.left;
    const x1 = WIDTH - MARGIN.right;
    const y0 = HEIGHT - MARGIN.bottom;
    const y1 = MARGIN.top;
    for (const tick of ticks(xScale.domain[0], xScale.domain[1])) {
        const px = round2(xScale.map(tick));
        parts.push(`<line x1="${px}" y1="${y0}" x2="${px}" y2="${y1}" stroke="#dddddd" stroke-width="1"/>`);
        parts.push(
            `<text x="${px}" y="${y0 + 18}" font-family="sans-serif" font-size="12" text-anchor="middle">${formatNumber(tick)}</text>`,
        );
    }
    for (const tick of ticks(yScale.domain[0], yScale.domain[1])) {
        const py = round2(yScale.map(tick));
        parts.push(`<line x1="${x0}" y1="${py}" x2="${x1}" y2="${py}" stroke="#dddddd" stroke-width="1"/>`);
        parts.push(
            `<text x="${x0 - 8}" y="${py}" font-family="sans-serif" font-size="12" text-anchor="end" dominant-baseline="middle">${formatNumber(tick)}</text>`,
        );
    }
    parts.push(`<line x1="${x0}" y1="${y0}" x2="${x1}" y2="${y0}" ${axisStyle}/>`);
    parts.push(`<line x1="${x0}" y1="${y0}" x2="${x0}" y2="${y1}" ${axisStyle}/>`);
    parts.push(
        `<text x="${(x0 + x1) / 2}" y="${HEIGHT - 12}" font-family="sans-serif" font-size="14" text-anchor="middle">${spec.xColumn}</text>`,
    );
    parts.push(
        `<text x="18" y="${(y0 + y1) / 2}" font-family="sans-serif" font-size="14" text-anchor="middle" transform="rotate(-90 18 ${(y0 + y1) / 2})">${spec.yColumn}</text>`,
    );
    if (spec.title) {
        parts.push(
            `<text x="${(x0 + x1) / 2}" y="18" font-family="sans-serif" font-size="15" text-anchor="middle">${spec.title}</text>`,
        );
    }

    // error bands first so lines draw on top
    seriesNames.forEach((name, index) => {
        const color = PALETTE[index % PALETTE.length];
        const pts = bySeries.get(name)!;
        if (spec.errColumn && pts.some((p) => p.err > 0)) {
            const upper = pts.map((p) => `${round2(xScale.map(p.x))},${round2(yScale.map(p.y + p.err))}`);
            const lower = [...pts]
                .reverse()
                .map((p) => `${round2(xScale.map(p.x))},${round2(yScale.map(p.y - p.err))}`);
            parts.push(
                `<polygon points="${[...upper, ...lower].join(" ")}" fill="${color}" fill-opacity="0.15" stroke="none"/>`,
            );
        }
    });
    seriesNames.forEach((name, index) => {
        const color = PALETTE[index % PALETTE.length];
        const pts = bySeries.get(name)!;
        const path = pts
            .map((p) => `${round2(xScale.map(p.x))},${round2(yScale.map(p.y))}`)
            .join(" ");
        parts.push(
            `<polyline points="${path}" fill="none" stroke="${color}" stroke-width="2"/>`,
        );
        for (const p of pts) {
            parts.push(
                `<circle cx="${round2(xScale.map(p.x))}" cy="${round2(yScale.map(p.y))}" r="3" fill="${color}"/>`,
            );
        }
    });

    // legend
    seriesNames.forEach((name, index) => {
        const color = PALETTE[index % PALETTE.length];
        const ly = MARGIN.top + 8 + index * 20;
        const lx = WIDTH - MARGIN.right + 14;
        parts.push(`<line x1="${lx}" y1="${ly}" x2="${lx + 22}" y2="${ly}" stroke="${color}" stroke-width="2"/>`);
        parts.push(
            `<text x="${lx + 28}" y="${ly}" font-family="sans-serif" font-size="12" dominant-baseline="middle">${name}</text>`,
        );
    });

    parts.push("</svg>");
    return parts.join("\n") + "\n";
}

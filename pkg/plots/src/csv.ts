/** Minimal CSV reader for the harness outputs (no quoting, one header row). */

export interface Table {
    columns: string[];
    rows: Record<string, string>[];
}

export function parseCsv(text: string): Table {
    const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
    if (lines.length === 0) {
        return { columns: [], rows: [] };
    }
    const columns = lines[0].split(",");
    const rows = lines.slice(1).map((line) => {
        const parts = line.split(",");
        const row: Record<string, string> = {};
        columns.forEach((col, i) => {
            row[col] = parts[i] ?? "";
        });
        return row;
    });
    return { columns, rows };
}

export function numeric(row: Record<string, string>, column: string): number {
    const value = Number(row[column]);
    if (!Number.isFinite(value)) {
        throw new Error(`non-numeric value '${row[column]}' in column '${column}'`);
    }
    return value;
}

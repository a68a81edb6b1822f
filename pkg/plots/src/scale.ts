/** Linear scales and tick placement with stable, locale-free formatting. */

export interface Scale {
    domain: [number, number];
    range: [number, number];
    map(value: number): number;
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
    let [d0, d1] = domain;
    if (d0 === d1) {
        // degenerate domain: widen symmetrically so points land mid-range
        d0 -= d0 === 0 ? 1 : Math.abs(d0) * 0.5;
        d1 += d1 === 0 ? 1 : Math.abs(d1) * 0.5;
    }
    const [r0, r1] = range;
    const slope = (r1 - r0) / (d1 - d0);
    return {
        domain: [d0, d1],
        range,
        map: (value: number) => r0 + (value - d0) * slope,
    };
}

/** Round tick steps to 1/2/5 times a power of ten. */
export function ticks(lo: number, hi: number, count = 6): number[] {
    if (lo === hi) {
        return [lo];
    }
    const span = hi - lo;
    const rawStep = span / Math.max(count - 1, 1);
    const power = Math.floor(Math.log10(rawStep));
    const base = Math.pow(10, power);
    let step = base;
    for (const mult of [1, 2, 5, 10]) {
        step = mult * base;
        if (step >= rawStep) break;
    }
    const start = Math.ceil(lo / step) * step;
    const out: number[] = [];
    for (let v = start; v <= hi + step * 1e-9; v += step) {
        out.push(v);
    }
    return out;
}

export function formatNumber(value: number): string {
    if (value === 0) return "0";
    const magnitude = Math.abs(value);
    if (magnitude >= 1e6 || magnitude < 1e-3) {
        return value.toExponential(2);
    }
    const text = value.toPrecision(6);
    return text.includes(".") ? text.replace(/\.?0+$/, "") : text;
}

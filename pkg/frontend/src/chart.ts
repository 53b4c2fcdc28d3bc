// SVG chart fragments for the graph shown alongside playback.  The values
// plotted are exactly the arrays returned by the API; nothing is recomputed.

export interface ChartGeometry {
  width: number;
  height: number;
  pad: number;
}

export const DEFAULT_GEOMETRY: ChartGeometry = { width: 640, height: 260, pad: 40 };

// Values used for plotting a sequential response, verbatim.
export function chartValues(graph: [string, number][]): number[] {
  return graph.map(([, value]) => value);
}

export function chartLabels(graph: [string, number][]): string[] {
  return graph.map(([label]) => label);
}

export function scalePoints(
  values: number[],
  geometry: ChartGeometry = DEFAULT_GEOMETRY,
): [number, number][] {
  const { width, height, pad } = geometry;
  const lo = Math.min(...values);
  const hi = Math.max(...values);
  const span = hi - lo || 1;
  const innerW = width - 2 * pad;
  const innerH = height - 2 * pad;
  const step = values.length > 1 ? innerW / (values.length - 1) : 0;
  return values.map((v, i) => {
    const x = pad + i * step;
    const y = height - pad - ((v - lo) / span) * innerH;
    return [x, y];
  });
}

function escapeText(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function lineChartSvg(
  graph: [string, number][],
  geometry: ChartGeometry = DEFAULT_GEOMETRY,
): string {
  const values = chartValues(graph);
  const labels = chartLabels(graph);
  const points = scalePoints(values, geometry);
  const { width, height, pad } = geometry;
  const polyline = points.map(([x, y]) => `${x.toFixed(1)},${y.toFixed(1)}`).join(" ");
  const dots = points
    .map(
      ([x, y], i) =>
        `<circle cx="${x.toFixed(1)}" cy="${y.toFixed(1)}" r="3.5" data-value="${values[i]}"><title>${escapeText(labels[i])}: ${values[i]}</title></circle>`,
    )
    .join("");
  const ticks = points
    .map(
      ([x], i) =>
        `<text x="${x.toFixed(1)}" y="${height - pad + 18}" text-anchor="middle" class="tick">${escapeText(labels[i])}</text>`,
    )
    .join("");
  const axis = `<line x1="${pad}" y1="${height - pad}" x2="${width - pad}" y2="${height - pad}" class="axis"/>`;
  return (
    `<svg viewBox="0 0 ${width} ${height}" class="line-chart" role="img">` +
    `${axis}<polyline points="${polyline}" fill="none"/>${dots}${ticks}</svg>`
  );
}

export function barChartSvg(
  labels: [string, string],
  values: [number, number],
  louder: "a" | "b" | "equal",
  geometry: ChartGeometry = DEFAULT_GEOMETRY,
): string {
  const { width, height, pad } = geometry;
  const innerH = height - 2 * pad;
  const hi = Math.max(Math.abs(values[0]), Math.abs(values[1])) || 1;
  const barW = (width - 4 * pad) / 2;
  const bars = values
    .map((v, i) => {
      const h = (Math.abs(v) / hi) * innerH;
      const x = pad + i * (barW + 2 * pad);
      const y = height - pad - h;
      const cls = v < 0 ? "bar negative" : "bar";
      return (
        `<rect x="${x.toFixed(1)}" y="${y.toFixed(1)}" width="${barW.toFixed(1)}" height="${h.toFixed(1)}" class="${cls}" data-value="${v}"/>` +
        `<text x="${(x + barW / 2).toFixed(1)}" y="${(y - 8).toFixed(1)}" text-anchor="middle" class="value">${v}</text>` +
        `<text x="${(x + barW / 2).toFixed(1)}" y="${height - pad + 18}" text-anchor="middle" class="tick">${escapeText(labels[i])}</text>`
      );
    })
    .join("");
  const verdict =
    louder === "equal"
      ? `<text x="${width / 2}" y="${pad / 2 + 8}" text-anchor="middle" class="verdict">equal</text>`
      : "";
  return `<svg viewBox="0 0 ${width} ${height}" class="bar-chart" role="img">${bars}${verdict}</svg>`;
}

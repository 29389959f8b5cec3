import { formatValue } from "./colors.js";
import type { BallDetail, PointId } from "./types.js";

export interface DrilldownRow {
  pointId: PointId;
  coords: number[];
  outcome: number | null;
}

/** Everything the member panel shows for one ball. All numbers come
 * straight from the server's ball response; nothing is recomputed here. */
export interface DrilldownView {
  ballId: number;
  landmark: PointId;
  memberIds: PointId[];
  size: number;
  value: number;
  axes: string[];
  rows: DrilldownRow[];
  outcomeMean: number | null;
  outcomeSd: number | null;
  meanSdRatio: number | null;
  flagProportions: Record<string, number>;
}

export function drilldownView(detail: BallDetail): DrilldownView {
  const rows: DrilldownRow[] = detail.member_ids.map((pointId, i) => ({
    pointId,
    coords: detail.rows[i] ?? [],
    outcome: detail.outcome?.values[i] ?? null,
  }));
  return {
    ballId: detail.id,
    landmark: detail.landmark,
    memberIds: [...detail.member_ids],
    size: detail.size,
    value: detail.value,
    axes: [...detail.axes],
    rows,
    outcomeMean: detail.outcome?.mean ?? null,
    outcomeSd: detail.outcome?.sd ?? null,
    meanSdRatio: detail.outcome?.mean_sd_ratio ?? null,
    flagProportions: { ...(detail.flag_proportions ?? {}) },
  };
}

/** Plain text lines of the panel, top to bottom. */
export function panelLines(view: DrilldownView): string[] {
  const lines = [
    `ball ${view.ballId} — ${view.size} member${view.size === 1 ? "" : "s"}`,
    `landmark ${view.landmark}`,
    `value ${formatValue(view.value)}`,
  ];
  if (view.outcomeMean !== null && view.outcomeSd !== null) {
    const ratio =
      view.meanSdRatio === null ? "n/a" : formatValue(view.meanSdRatio);
    lines.push(
      `outcome mean ${formatValue(view.outcomeMean)}, ` +
        `sd ${formatValue(view.outcomeSd)}, mean/sd ${ratio}`,
    );
  }
  for (const [name, share] of Object.entries(view.flagProportions)) {
    lines.push(`${name}: ${formatValue(share)}`);
  }
  for (const row of view.rows) {
    const coords = row.coords.map(formatValue).join(", ");
    const outcome = row.outcome === null ? "" : ` | Y=${formatValue(row.outcome)}`;
    lines.push(`${row.pointId}: (${coords})${outcome}`);
  }
  return lines;
}

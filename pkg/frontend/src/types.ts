/** Wire types for the explorer service. */

/** Graph document schema this client renders. */
export const SUPPORTED_SCHEMA_VERSION = 1;

export type PointId = number | string;

export interface GraphMetadata {
  epsilon: number;
  metric: string;
  color_fn: string | null;
  flag: string | null;
  color_low: number;
  color_high: number;
  layout_seed: number;
  n_points: number;
  order_seed?: number | null;
}

export interface BallNode {
  id: number;
  landmark: PointId;
  size: number;
  members: PointId[];
  value: number;
  hex: string;
  x: number;
  y: number;
  radius: number;
}

export interface GraphDocument {
  schema_version: number;
  metadata: GraphMetadata;
  balls: BallNode[];
  edges: Array<[number, number]>;
}

export interface BallOutcome {
  values: number[];
  mean: number;
  sd: number;
  mean_sd_ratio: number | null;
}

export interface BallDetail {
  id: number;
  landmark: PointId;
  member_ids: PointId[];
  size: number;
  value: number;
  axes: string[];
  rows: number[][];
  outcome?: BallOutcome;
  flag_proportions?: Record<string, number>;
}

export interface CloudSummary {
  cloud_key: string;
  n: number;
  d: number;
  axes: string[];
  has_outcome: boolean;
  flags: string[];
}

export interface MetaResponse {
  schema_version: number;
  package_version: string;
  cloud: CloudSummary | null;
  colors: string[];
  default_layout_seed: number;
}

/** Wire types mirroring the service's JSON schema (version 1). */

export interface ColorInfo {
  name: string;
  highlight: [number, number, number];
}

export interface Region {
  bbox: [number, number, number, number];
  area: number;
  centroid: [number, number];
  num_points: number;
}

export interface ColorEntry {
  name: string;
  pixel_count: number;
  regions: Region[];
}

export interface ColorDoc {
  schema_version: number;
  pipeline: "color";
  colors: ColorEntry[];
  annotated_image_id?: string;
  params: Record<string, number>;
}

export interface CircleDetection {
  type: "circle";
  cx: number;
  cy: number;
  r: number;
  votes: number;
}

export interface PolygonDetection {
  type: "polygon";
  label: string;
  vertices: [number, number][];
}

export interface ShapeDoc {
  schema_version: number;
  pipeline: "shape";
  detections: (CircleDetection | PolygonDetection)[];
  annotated_image_id?: string;
  params: Record<string, number>;
}

export interface MatchDoc {
  schema_version: number;
  pipeline: "match";
  found: boolean;
  reason: string | null;
  num_matches: number;
  homography: number[][] | null;
  polygon: [number, number][] | null;
  annotated_image_id?: string;
}

export type ResultDoc = ColorDoc | ShapeDoc | MatchDoc;

export interface UploadInfo {
  id: string;
  width: number;
  height: number;
}

export interface ApiFieldError {
  field: string;
  message: string;
}

/** Thin client over the service's JSON/PNG endpoints. */

import type { ApiFieldError, ColorDoc, ColorInfo, MatchDoc, ShapeDoc, UploadInfo } from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    message: string
  ) {
    super(message);
  }
}

async function errorMessage(resp: Response): Promise<string> {
  try {
    const body = await resp.json();
    const detail = body.detail;
    if (typeof detail === "string") return detail;
    if (Array.isArray(detail)) {
      return (detail as ApiFieldError[]).map((e) => `${e.field}: ${e.message}`).join("; ");
    }
  } catch {
    // fall through to the generic message
  }
  return `request failed with status ${resp.status}`;
}

async function checked<T>(resp: Response): Promise<T> {
  if (!resp.ok) throw new ApiError(resp.status, await errorMessage(resp));
  return (await resp.json()) as T;
}

export async function uploadImage(file: File): Promise<UploadInfo> {
  const form = new FormData();
  form.append("file", file);
  return checked(await fetch("/api/images", { method: "POST", body: form }));
}

export async function fetchPalette(): Promise<ColorInfo[]> {
  const body = await checked<{ colors: ColorInfo[] }>(await fetch("/api/colors"));
  return body.colors;
}

async function post<T>(url: string, payload: unknown): Promise<T> {
  return checked(
    await fetch(url, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    })
  );
}

export function detectColor(
  imageId: string,
  colors: string[],
  params: Record<string, number>
): Promise<ColorDoc> {
  return post("/api/detect/color", { image_id: imageId, colors, params });
}

export function detectShape(
  imageId: string,
  shapes: string[],
  params: Record<string, number>
): Promise<ShapeDoc> {
  return post("/api/detect/shape", { image_id: imageId, shapes, params });
}

export function matchObject(
  objectId: string,
  sceneId: string,
  params: Record<string, number>,
  seed: number
): Promise<MatchDoc> {
  return post("/api/match", { object_id: objectId, scene_id: sceneId, params, seed });
}

/** Application state and its pure reducer.
 *
 * Invariants enforced here (and asserted by the tests):
 *  - any change to a source image or to the color/shape selection clears the
 *    previous result and annotated image;
 *  - `busy` blocks duplicate submissions: SUBMIT is a no-op while a request
 *    is in flight;
 *  - every transition is pure, so the rendered UI is a function of UiState.
 */

import type { ColorInfo, ResultDoc, UploadInfo } from "./types.js";

export type Screen = "menu" | "color" | "shape" | "match";

export const SHAPE_CHOICES = ["Circle", "Triangle", "Square", "Rectangle"] as const;

/** Advanced parameters per screen, pre-filled with the pipeline defaults. */
export const DEFAULT_PARAMS: Record<Exclude<Screen, "menu">, Record<string, string>> = {
  color: { sigma: "1.5", se_size: "3", min_area: "100" },
  shape: { sigma: "1.0", dp_epsilon_factor: "0.02", r_min: "10", min_area: "100" },
  match: { threshold: "30", max_good: "50", reproj_threshold: "3.0" },
};

export interface UiState {
  screen: Screen;
  /** Palette fetched from the service; null until loaded. */
  palette: ColorInfo[] | null;
  /** Uploaded image ids by slot. color/shape use "image"; match uses "object"/"scene". */
  images: { image: UploadInfo | null; object: UploadInfo | null; scene: UploadInfo | null };
  selectedColors: string[];
  selectedShapes: string[];
  result: ResultDoc | null;
  busy: boolean;
  /** Server-side error banner (non-blocking). */
  error: string | null;
  /** Local validation message; set without any API call. */
  notice: string | null;
  showAdvanced: boolean;
  params: Record<string, string>;
  seed: string;
}

export type ImageSlot = "image" | "object" | "scene";

export type Action =
  | { kind: "NAVIGATE"; screen: Screen }
  | { kind: "PALETTE_LOADED"; palette: ColorInfo[] }
  | { kind: "IMAGE_UPLOADED"; slot: ImageSlot; info: UploadInfo }
  | { kind: "TOGGLE_COLOR"; name: string }
  | { kind: "TOGGLE_SHAPE"; name: string }
  | { kind: "SUBMIT" }
  | { kind: "RESULT"; doc: ResultDoc }
  | { kind: "FAILED"; message: string }
  | { kind: "NOTICE"; message: string }
  | { kind: "TOGGLE_ADVANCED" }
  | { kind: "SET_PARAM"; name: string; value: string }
  | { kind: "SET_SEED"; value: string };

export function initialState(): UiState {
  return {
    screen: "menu",
    palette: null,
    images: { image: null, object: null, scene: null },
    selectedColors: [],
    selectedShapes: [],
    result: null,
    busy: false,
    error: null,
    notice: null,
    showAdvanced: false,
    params: {},
    seed: "0",
  };
}

/** Clear everything derived from the previous inputs. */
function clearResult(state: UiState): UiState {
  return { ...state, result: null, error: null, notice: null };
}

function toggle(list: string[], name: string): string[] {
  return list.includes(name) ? list.filter((n) => n !== name) : [...list, name];
}

export function reduce(state: UiState, action: Action): UiState {
  switch (action.kind) {
    case "NAVIGATE": {
      const params =
        action.screen === "menu" ? {} : { ...DEFAULT_PARAMS[action.screen] };
      return {
        ...initialState(),
        screen: action.screen,
        palette: state.palette,
        params,
      };
    }
    case "PALETTE_LOADED":
      return { ...state, palette: action.palette };
    case "IMAGE_UPLOADED":
      return clearResult({
        ...state,
        busy: false,
        images: { ...state.images, [action.slot]: action.info },
      });
    case "TOGGLE_COLOR":
      return clearResult({
        ...state,
        selectedColors: toggle(state.selectedColors, action.name),
      });
    case "TOGGLE_SHAPE":
      return clearResult({
        ...state,
        selectedShapes: toggle(state.selectedShapes, action.name),
      });
    case "SUBMIT":
      if (state.busy) return state;
      return { ...state, busy: true, error: null, notice: null };
    case "RESULT":
      return { ...state, busy: false, result: action.doc, error: null };
    case "FAILED":
      return { ...state, busy: false, error: action.message };
    case "NOTICE":
      return { ...state, notice: action.message };
    case "TOGGLE_ADVANCED":
      return { ...state, showAdvanced: !state.showAdvanced };
    case "SET_PARAM":
      return clearResult({
        ...state,
        params: { ...state.params, [action.name]: action.value },
      });
    case "SET_SEED":
      return clearResult({ ...state, seed: action.value });
  }
}

/** Local validation run before any network request. Returns a message, or
 * null when the submission may proceed. */
export function validateSubmission(state: UiState): string | null {
  switch (state.screen) {
    case "color":
      if (!state.images.image) return "Upload an image first.";
      if (state.selectedColors.length === 0) return "Select at least one color.";
      return null;
    case "shape":
      if (!state.images.image) return "Upload an image first.";
      if (state.selectedShapes.length === 0) return "Select at least one shape.";
      return null;
    case "match":
      if (!state.images.object) return "Upload an object image first.";
      if (!state.images.scene) return "Upload a scene image first.";
      return null;
    default:
      return "Nothing to submit.";
  }
}

/** Advanced params that differ from an empty string, parsed as numbers. */
export function numericParams(state: UiState): Record<string, number> {
  const out: Record<string, number> = {};
  for (const [name, value] of Object.entries(state.params)) {
    const trimmed = value.trim();
    if (trimmed === "") continue;
    const num = Number(trimmed);
    if (Number.isFinite(num)) out[name] = num;
  }
  return out;
}

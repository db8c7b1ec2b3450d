/** DOM wiring: dispatch actions, re-render, and issue API calls.
 *
 * All state transitions go through the pure reducer; this module only
 * translates DOM events into actions and action results back into renders.
 */

import * as api from "./api.js";
import {
  initialState,
  numericParams,
  reduce,
  validateSubmission,
  type Action,
  type ImageSlot,
  type UiState,
} from "./state.js";
import { renderApp } from "./render.js";

let state: UiState = initialState();
const root = document.getElementById("app") as HTMLElement;

function dispatch(action: Action): void {
  state = reduce(state, action);
  root.innerHTML = renderApp(state);
}

function failed(err: unknown): void {
  const message = err instanceof Error ? err.message : String(err);
  dispatch({ kind: "FAILED", message });
}

async function upload(slot: ImageSlot, file: File): Promise<void> {
  dispatch({ kind: "SUBMIT" });
  try {
    const info = await api.uploadImage(file);
    dispatch({ kind: "IMAGE_UPLOADED", slot, info });
  } catch (err) {
    failed(err);
  }
}

async function submit(): Promise<void> {
  if (state.busy) return;
  const message = validateSubmission(state);
  if (message) {
    dispatch({ kind: "NOTICE", message });
    return;
  }
  const params = numericParams(state);
  dispatch({ kind: "SUBMIT" });
  try {
    if (state.screen === "color") {
      const doc = await api.detectColor(state.images.image!.id, state.selectedColors, params);
      dispatch({ kind: "RESULT", doc });
    } else if (state.screen === "shape") {
      const doc = await api.detectShape(state.images.image!.id, state.selectedShapes, params);
      dispatch({ kind: "RESULT", doc });
    } else if (state.screen === "match") {
      const seed = Number(state.seed.trim()) || 0;
      const doc = await api.matchObject(
        state.images.object!.id,
        state.images.scene!.id,
        params,
        seed
      );
      dispatch({ kind: "RESULT", doc });
    }
  } catch (err) {
    failed(err);
  }
}

root.addEventListener("click", (event) => {
  const target = event.target as HTMLElement;
  const nav = target.closest<HTMLElement>("[data-nav]");
  if (nav) {
    dispatch({ kind: "NAVIGATE", screen: nav.dataset.nav as UiState["screen"] });
    return;
  }
  if (target.closest("[data-submit]")) {
    void submit();
    return;
  }
  const summary = target.closest("summary");
  if (summary) {
    event.preventDefault();
    dispatch({ kind: "TOGGLE_ADVANCED" });
  }
});

root.addEventListener("change", (event) => {
  const target = event.target as HTMLInputElement;
  if (target.dataset.slot && target.files && target.files[0]) {
    void upload(target.dataset.slot as ImageSlot, target.files[0]);
  } else if (target.dataset.color) {
    dispatch({ kind: "TOGGLE_COLOR", name: target.dataset.color });
  } else if (target.dataset.shape) {
    dispatch({ kind: "TOGGLE_SHAPE", name: target.dataset.shape });
  } else if (target.dataset.param) {
    dispatch({ kind: "SET_PARAM", name: target.dataset.param, value: target.value });
  } else if ("seed" in target.dataset) {
    dispatch({ kind: "SET_SEED", value: target.value });
  }
});

async function boot(): Promise<void> {
  root.innerHTML = renderApp(state);
  try {
    const palette = await api.fetchPalette();
    dispatch({ kind: "PALETTE_LOADED", palette });
  } catch (err) {
    failed(err);
  }
}

void boot();

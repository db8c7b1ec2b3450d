/** Pure HTML rendering: the markup is a function of UiState alone.
 *
 * Every number shown in a result panel is taken verbatim from the service
 * JSON; nothing is recomputed on the client.
 */

import { SHAPE_CHOICES, type UiState } from "./state.js";
import type { ColorDoc, MatchDoc, ShapeDoc } from "./types.js";

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function rgbCss(rgb: [number, number, number]): string {
  return `rgb(${rgb[0]}, ${rgb[1]}, ${rgb[2]})`;
}

function banner(state: UiState): string {
  const parts: string[] = [];
  if (state.error) parts.push(`<div class="banner error">${esc(state.error)}</div>`);
  if (state.notice) parts.push(`<div class="banner notice">${esc(state.notice)}</div>`);
  if (state.busy) parts.push(`<div class="banner busy">Working…</div>`);
  return parts.join("");
}

function uploader(slot: string, label: string, state: UiState): string {
  const info = state.images[slot as "image" | "object" | "scene"];
  const status = info
    ? `<span class="upload-status">${info.width}×${info.height} (${esc(info.id)})</span>`
    : `<span class="upload-status empty">no image</span>`;
  return `<label class="uploader">${esc(label)}
    <input type="file" data-slot="${slot}" accept="image/*">
    ${status}</label>`;
}

function advanced(state: UiState): string {
  const fields = Object.entries(state.params)
    .map(
      ([name, value]) => `<label class="param">${esc(name)}
        <input type="text" data-param="${esc(name)}" value="${esc(value)}"></label>`
    )
    .join("");
  const seed =
    state.screen === "match"
      ? `<label class="param">seed
          <input type="text" data-seed value="${esc(state.seed)}"></label>`
      : "";
  return `<details class="advanced"${state.showAdvanced ? " open" : ""}>
    <summary>Advanced parameters</summary>${fields}${seed}</details>`;
}

function submitButton(state: UiState): string {
  return `<button data-submit${state.busy ? " disabled" : ""}>Detect</button>`;
}

function annotatedImage(id: string | undefined): string {
  if (!id) return "";
  return `<img class="annotated" alt="annotated result" src="/api/images/${esc(id)}">`;
}

function menuScreen(): string {
  return `<nav class="menu">
    <button data-nav="color">Detect by color</button>
    <button data-nav="shape">Detect by shape</button>
    <button data-nav="match">Detect by local features</button>
  </nav>`;
}

function colorResult(doc: ColorDoc): string {
  const rows = doc.colors
    .map(
      (c) => `<tr data-color-row="${esc(c.name)}">
        <td>${esc(c.name)}</td>
        <td class="num" data-region-count>${c.regions.length}</td>
        <td class="num" data-pixel-count>${c.pixel_count}</td></tr>`
    )
    .join("");
  return `<section class="result">
    ${annotatedImage(doc.annotated_image_id)}
    <table><thead><tr><th>color</th><th>regions</th><th>pixels</th></tr></thead>
    <tbody>${rows}</tbody></table></section>`;
}

function colorScreen(state: UiState): string {
  const palette = state.palette ?? [];
  const checkboxes = palette
    .map(
      (c) => `<label class="choice">
        <input type="checkbox" data-color="${esc(c.name)}"${
          state.selectedColors.includes(c.name) ? " checked" : ""
        }>
        <span class="swatch" style="background:${rgbCss(c.highlight)}"></span>${esc(c.name)}</label>`
    )
    .join("");
  const result = state.result && state.result.pipeline === "color" ? colorResult(state.result) : "";
  return `${uploader("image", "Image", state)}
    <fieldset class="choices"><legend>Colors</legend>${checkboxes}</fieldset>
    ${advanced(state)}${submitButton(state)}${result}`;
}

function shapeResult(doc: ShapeDoc): string {
  const rows = doc.detections
    .map((d) =>
      d.type === "circle"
        ? `<tr><td>circle</td><td class="num">cx=${d.cx} cy=${d.cy} r=${d.r}</td></tr>`
        : `<tr><td>${esc(d.label)}</td><td class="num">${d.vertices.length} vertices</td></tr>`
    )
    .join("");
  return `<section class="result">
    ${annotatedImage(doc.annotated_image_id)}
    <table><thead><tr><th>shape</th><th>detail</th></tr></thead>
    <tbody>${rows}</tbody></table></section>`;
}

function shapeScreen(state: UiState): string {
  const checkboxes = SHAPE_CHOICES.map(
    (name) => `<label class="choice">
      <input type="checkbox" data-shape="${name}"${
        state.selectedShapes.includes(name) ? " checked" : ""
      }>${name}</label>`
  ).join("");
  const result = state.result && state.result.pipeline === "shape" ? shapeResult(state.result) : "";
  return `${uploader("image", "Image", state)}
    <fieldset class="choices"><legend>Shapes</legend>${checkboxes}</fieldset>
    ${advanced(state)}${submitButton(state)}${result}`;
}

function matchResult(doc: MatchDoc): string {
  if (!doc.found) {
    return `<section class="result">
      <div class="banner notfound">not found: ${esc(doc.reason ?? "unknown")}</div></section>`;
  }
  return `<section class="result">
    ${annotatedImage(doc.annotated_image_id)}
    <p><span data-num-matches>${doc.num_matches}</span> good matches</p></section>`;
}

function matchScreen(state: UiState): string {
  const result = state.result && state.result.pipeline === "match" ? matchResult(state.result) : "";
  return `${uploader("object", "Object", state)}
    ${uploader("scene", "Scene", state)}
    ${advanced(state)}${submitButton(state)}${result}`;
}

export function renderApp(state: UiState): string {
  const body =
    state.screen === "menu"
      ? menuScreen()
      : state.screen === "color"
        ? colorScreen(state)
        : state.screen === "shape"
          ? shapeScreen(state)
          : matchScreen(state);
  const back =
    state.screen === "menu" ? "" : `<button class="back" data-nav="menu">← Menu</button>`;
  return `<header><h1>Object Detection</h1>${back}</header>
    ${banner(state)}<main data-screen="${state.screen}">${body}</main>`;
}

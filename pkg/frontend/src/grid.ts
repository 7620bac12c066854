/**
 * HTML renderers for the workbench panels. Pure string builders so they
 * are testable without a browser; main.ts owns all event wiring.
 */

import type { ChecklistItem, TriagePayload } from './api.js';
import type { WorkbenchState } from './state.js';

export function esc(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

function inputCell(state: WorkbenchState, parameter: string,
                   scenario: string): string {
  const override = state.overrideValue(parameter, scenario);
  const baseline = state.baselineValue(parameter, scenario);
  const shown = override ?? baseline;
  const rejection = state.rejectionFor(parameter, scenario);
  const classes = ['cell-input'];
  if (state.isDirty(parameter, scenario)) classes.push('dirty');
  if (rejection) classes.push('invalid');
  const title = rejection ? ` title="${esc(rejection)}"` : '';
  return (
    `<td class="${classes.join(' ')}"${title}>` +
    `<input data-parameter="${esc(parameter)}" data-scenario="${esc(scenario)}"` +
    ` value="${shown === null || shown === undefined ? '' : String(shown)}"` +
    ` placeholder="??" inputmode="decimal">` +
    `</td>`
  );
}

function derivedCell(state: WorkbenchState, parameter: string,
                     scenario: string): string {
  const cell = state.cellFor(scenario, parameter);
  if (!cell) return '<td class="cell-derived"></td>';
  const classes = ['cell-derived', `status-${cell.status}`];
  const tint = state.tintFor(parameter, scenario);
  if (tint && tint.level !== 'unassessed') classes.push(`tint-${tint.level}`);
  const title = cell.note ? ` title="${esc(cell.note)}"` : '';
  return `<td class="${classes.join(' ')}"${title}>${esc(cell.display)}</td>`;
}

export function renderParameterGrid(state: WorkbenchState): string {
  const model = state.model;
  if (!model) return '<p class="placeholder">no model loaded</p>';
  const scenarios = state.scenarioNames();
  const head =
    '<tr><th>Parameter</th><th>Description</th>' +
    scenarios.map((s) => `<th>${esc(s)}</th>`).join('') +
    '</tr>';
  const row = (p: { name: string; description: string; unit: string },
               cells: string, extraTitle: string) =>
    `<tr><td class="param-name" title="${esc(extraTitle)}">${esc(p.name)}</td>` +
    `<td class="param-desc">${esc(p.description)}` +
    (p.unit ? ` <span class="unit">[${esc(p.unit)}]</span>` : '') +
    `</td>${cells}</tr>`;

  const inputs = model.parameters
    .filter((p) => p.kind === 'input')
    .map((p) => row(
      p,
      scenarios.map((s) => inputCell(state, p.name, s)).join(''),
      'input parameter',
    ));
  const derived = model.parameters
    .filter((p) => p.kind === 'derived')
    .map((p) => row(
      p,
      scenarios.map((s) => derivedCell(state, p.name, s)).join(''),
      p.formula ?? '',
    ));

  return (
    `<table class="grid"><thead>${head}</thead>` +
    `<tbody class="group-inputs"><tr class="group"><th colspan="${scenarios.length + 2}">Inputs</th></tr>${inputs.join('')}</tbody>` +
    `<tbody class="group-derived"><tr class="group"><th colspan="${scenarios.length + 2}">Derived</th></tr>${derived.join('')}</tbody>` +
    `</table>`
  );
}

export function renderRiskMatrix(state: WorkbenchState): string {
  const source = state.previewRisk ?? state.baselineRisk;
  if (!source) return '';
  const head =
    '<tr><th>Operation</th>' +
    source.scenarios.map((s) => `<th>${esc(s)}</th>`).join('') +
    '</tr>';
  const rows = source.operations.map((op) => {
    const cells = source.scenarios.map((s) => {
      const cell = op.cells[s];
      if (!cell) return '<td></td>';
      const label = cell.level === 'unassessed' ? '' : cell.level;
      return `<td class="risk-${cell.level}" title="${esc(cell.basis)}">${label}</td>`;
    });
    return `<tr><td>${esc(op.name)}</td>${cells.join('')}</tr>`;
  });
  return `<table class="risk"><thead>${head}</thead><tbody>${rows.join('')}</tbody></table>`;
}

export function renderTriage(payload: TriagePayload): string {
  const rows = payload.rows.map((r) => {
    const cls = r.override_applied ? ' class="overridden"' : '';
    const product = r.product === null ? '' : String(r.product);
    return (
      `<tr${cls}><td>${esc(r.operation)}</td><td>${esc(r.work)}</td>` +
      `<td>${esc(r.load)}</td><td>${product}</td>` +
      `<td>${esc(r.proposal)}</td><td>${esc(r.final)}</td>` +
      `<td>${r.override_applied ? 'yes' : ''}</td></tr>`
    );
  });
  const c = payload.counts;
  return (
    '<table class="triage"><thead><tr><th>Operation</th><th>Work</th>' +
    '<th>Load</th><th>Product</th><th>Proposed</th><th>Final</th>' +
    `<th>Overridden</th></tr></thead><tbody>${rows.join('')}</tbody></table>` +
    `<p class="counts">${c.critical} critical, ${c.non_critical} non-critical,` +
    ` ${c.pending} pending</p>`
  );
}

export function renderChecklist(items: ChecklistItem[]): string {
  const rows = items.map(
    (i) =>
      `<li class="check-${i.status}"><span class="num">${i.number}.</span> ` +
      `${esc(i.title)} <span class="status">${i.status}</span>` +
      `<span class="evidence">${esc(i.evidence)}</span></li>`,
  );
  return `<ol class="checklist">${rows.join('')}</ol>`;
}

export function renderStatus(state: WorkbenchState): string {
  const model = state.model;
  if (!model) return 'loading';
  const dirty = state.dirtyCount();
  const parts = [
    `${esc(model.meta.name)} v${esc(model.meta.version)}`,
    `revision ${state.revision}`,
    dirty === 0 ? 'no unsaved edits' : `${dirty} unsaved edit${dirty === 1 ? '' : 's'}`,
  ];
  if (state.staleAt !== null) {
    parts.push(`server moved to revision ${state.staleAt}, reload required`);
  }
  return parts.join(' · ');
}

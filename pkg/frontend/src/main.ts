import {
  ApiError,
  OverridesRejected,
  StaleRevision,
  WorkbenchApi,
  type ChecklistItem,
  type TriagePayload,
} from './api.js';
import { WorkbenchState } from './state.js';
import {
  renderChecklist,
  renderParameterGrid,
  renderRiskMatrix,
  renderStatus,
  renderTriage,
} from './grid.js';

const api = new WorkbenchApi();
const state = new WorkbenchState();

let triagePayload: TriagePayload | null = null;
let checklistItems: ChecklistItem[] = [];
let whatifTimer: number | undefined;

function $(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing #${id}`);
  return el;
}

function showBanner(message: string, withReload = false): void {
  const banner = $('banner');
  banner.textContent = message;
  if (withReload) {
    const btn = document.createElement('button');
    btn.textContent = 'Reload';
    btn.addEventListener('click', () => location.reload());
    banner.append(' ', btn);
  }
  banner.hidden = false;
}

function clearBanner(): void {
  const banner = $('banner');
  banner.hidden = true;
  banner.textContent = '';
}

function renderAll(): void {
  // re-rendering replaces the focused input; put the caret back afterwards
  const active = document.activeElement;
  let focus: { parameter: string; scenario: string; at: number | null } | null = null;
  if (active instanceof HTMLInputElement && active.dataset.parameter) {
    focus = {
      parameter: active.dataset.parameter,
      scenario: active.dataset.scenario ?? '',
      at: active.selectionStart,
    };
  }

  $('grid').innerHTML = renderParameterGrid(state);
  $('risk').innerHTML = renderRiskMatrix(state);
  if (triagePayload) $('triage').innerHTML = renderTriage(triagePayload);
  $('checklist').innerHTML = renderChecklist(checklistItems);
  $('status').textContent = renderStatus(state);
  ($('save') as HTMLButtonElement).disabled =
    state.dirtyCount() === 0 || state.staleAt !== null;
  ($('revert') as HTMLButtonElement).disabled = state.dirtyCount() === 0;

  if (focus) {
    const sel =
      `input[data-parameter="${CSS.escape(focus.parameter)}"]` +
      `[data-scenario="${CSS.escape(focus.scenario)}"]`;
    const input = document.querySelector<HTMLInputElement>(sel);
    if (input) {
      input.focus();
      if (focus.at !== null) input.setSelectionRange(focus.at, focus.at);
    }
  }
}

function scheduleWhatif(): void {
  window.clearTimeout(whatifTimer);
  if (state.dirtyCount() === 0) {
    state.dropPreview();
    renderAll();
    return;
  }
  whatifTimer = window.setTimeout(runWhatif, 250);
}

async function runWhatif(): Promise<void> {
  try {
    const res = await api.whatif(state.overridesBody());
    state.applyPreview(res.evaluation, res.risk);
    clearBanner();
  } catch (err) {
    if (err instanceof OverridesRejected) {
      state.dropPreview();
      const general = state.markRejected(err.errors);
      if (general.length > 0) showBanner(general.join('; '));
    } else {
      showBanner(err instanceof Error ? err.message : String(err));
    }
  }
  renderAll();
}

function onGridInput(event: Event): void {
  const input = event.target;
  if (!(input instanceof HTMLInputElement) || !input.dataset.parameter) return;
  if (state.staleAt !== null) {
    showBanner('the model changed on the server; reload before editing', true);
    return;
  }
  const parameter = input.dataset.parameter;
  const scenario = input.dataset.scenario ?? '';
  const text = input.value.trim();
  if (text === '') {
    state.clearOverride(parameter, scenario);
  } else {
    const value = Number(text);
    if (!Number.isFinite(value)) return; // keep typing; not a number yet
    state.setOverride(parameter, scenario, value);
  }
  scheduleWhatif();
}

async function saveEdits(): Promise<void> {
  const edits = state.pendingEdits();
  if (edits.length === 0) return;
  const source = window.prompt('Where does this value come from? (required)');
  if (!source || !source.trim()) return;
  const note = window.prompt('Note (optional)') ?? '';
  const provenance = { source: source.trim(), note };

  for (const edit of edits) {
    try {
      const res = await api.putValue(
        edit.parameter, edit.scenario, edit.value, provenance, state.revision);
      state.acceptPersist(edit.parameter, edit.scenario, edit.value,
                          res.revision);
    } catch (err) {
      if (err instanceof StaleRevision) {
        state.markStale(err.serverRevision);
        showBanner(err.message, true);
        break;
      }
      if (err instanceof ApiError) {
        state.markRejected([{ parameter: edit.parameter,
                              scenario: edit.scenario, message: err.message }]);
        continue;
      }
      showBanner(err instanceof Error ? err.message : String(err));
      break;
    }
  }

  // values moved on disk, so pull a fresh baseline
  try {
    const [ev, risk] = await Promise.all([api.getEval(), api.getRisk()]);
    state.refreshBaseline(ev, risk);
  } catch {
    // keep the stale baseline; the banner already reports write errors
  }
  if (state.dirtyCount() > 0 && state.staleAt === null) {
    await runWhatif();
  } else {
    renderAll();
  }
}

async function boot(): Promise<void> {
  const [model, ev, risk, triage, checklist] = await Promise.all([
    api.getModel(),
    api.getEval(),
    api.getRisk(),
    api.getTriage(),
    api.getChecklist(),
  ]);
  state.loadSnapshot(model.model, model.revision, ev, risk);
  triagePayload = triage;
  checklistItems = checklist.items;
  if (model.model.notes) $('notes').textContent = model.model.notes;
  renderAll();
}

$('grid').addEventListener('input', onGridInput);
$('save').addEventListener('click', () => void saveEdits());
$('revert').addEventListener('click', () => {
  state.revertAll();
  renderAll();
});

void boot().catch((err) => {
  showBanner(`failed to load the model: ${err instanceof Error ? err.message : err}`);
});

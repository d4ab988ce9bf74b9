import { HttpApiClient } from './api.js';
import { debounce } from './debounce.js';
import { panelText, summaryPanel, summaryPanelHtml, escapeHtml } from './render.js';
import { ExplorerStore } from './store.js';
import type { ExplorerState } from './store.js';
import type { DatasetInfo, SummaryMode } from './types.js';
import { decodeState, encodeState } from './url.js';

const api = new HttpApiClient('');
const store = new ExplorerStore(api);

const el = (id: string): HTMLElement => {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node;
};

function renderDatasets(datasets: DatasetInfo[], selected: string | null): void {
  const select = el('dataset-select') as HTMLSelectElement;
  select.innerHTML = datasets
    .map(
      (d) =>
        `<option value="${escapeHtml(d.id)}"${d.id === selected ? ' selected' : ''}>` +
        `${escapeHtml(d.category)} (${d.product_count})</option>`,
    )
    .join('');
}

function renderFilters(state: ExplorerState): void {
  const chips = state.filters
    .map(
      (t) =>
        `<span class="chip">${escapeHtml(t.feature)}=${escapeHtml(t.value)}` +
        `<button class="remove-filter" data-feature="${escapeHtml(t.feature)}">×</button></span>`,
    )
    .join('');
  el('active-filters').innerHTML = chips || '<em>no filters</em>';

  const featureSelect = el('filter-feature') as HTMLSelectElement;
  const current = state.pendingFeature ?? featureSelect.value;
  featureSelect.innerHTML = state.features
    .map(
      (f) =>
        `<option value="${escapeHtml(f.name)}"${f.name === current ? ' selected' : ''}>` +
        `${escapeHtml(f.name)} (${f.kind})</option>`,
    )
    .join('');
  if (state.pendingFeature) (el('filter-value') as HTMLInputElement).focus();
}

function renderSummary(state: ExplorerState): void {
  const container = el('summary-panel');
  if (!state.summary) {
    container.innerHTML = '<em>pick a dataset</em>';
    return;
  }
  const panel = summaryPanel(state.summary);
  container.innerHTML = summaryPanelHtml(panel);
  // the displayed text must equal the service response byte-for-byte
  console.assert(panelText(panel) === state.summary.summary);
}

function renderProducts(state: ExplorerState): void {
  const container = el('product-table');
  if (!state.products) {
    container.innerHTML = '';
    return;
  }
  const names = state.features.map((f) => f.name);
  const header = `<tr><th>id</th>${names.map((n) => `<th>${escapeHtml(n)}</th>`).join('')}</tr>`;
  const rows = state.products.products
    .map(
      (p) =>
        `<tr><td>${p.id}</td>${names
          .map((n) => `<td>${escapeHtml(String(p.values[n] ?? ''))}</td>`)
          .join('')}</tr>`,
    )
    .join('');
  container.innerHTML = `<table>${header}${rows}</table>`;
  el('product-count').textContent =
    `${state.products.total} products (page ${state.products.page})`;
}

function syncUrl(state: ExplorerState): void {
  const encoded = encodeState({
    datasetId: state.datasetId,
    filters: state.filters,
    mode: state.mode,
    page: state.page,
  });
  const target = encoded ? `?${encoded}` : location.pathname;
  if (location.search.slice(1) !== encoded) history.replaceState(null, '', target);
}

store.subscribe((state) => {
  renderFilters(state);
  renderSummary(state);
  renderProducts(state);
  el('error-box').textContent = state.error ?? '';
  (document.querySelectorAll('input[name="mode"]') as NodeListOf<HTMLInputElement>).forEach(
    (radio) => {
      radio.checked = radio.value === state.mode;
    },
  );
  syncUrl(state);
});

const applyFromEditor = () => {
  const feature = (el('filter-feature') as HTMLSelectElement).value;
  const value = (el('filter-value') as HTMLInputElement).value.trim();
  if (feature && value) void store.applyFilter({ feature, value });
};

async function boot(): Promise<void> {
  const datasets = await api.listDatasets();
  const initial = decodeState(location.search.slice(1));
  renderDatasets(datasets, initial.datasetId);
  el('dataset-select').addEventListener('change', (event) => {
    void store.selectDataset((event.target as HTMLSelectElement).value);
  });
  document.querySelectorAll('input[name="mode"]').forEach((radio) =>
    radio.addEventListener('change', (event) => {
      void store.setMode((event.target as HTMLInputElement).value as SummaryMode);
    }),
  );
  el('filter-apply').addEventListener('click', applyFromEditor);
  // typing in the constraint editor re-queries after a 300 ms pause
  el('filter-value').addEventListener('input', debounce(applyFromEditor, 300));
  el('active-filters').addEventListener('click', (event) => {
    const target = event.target as HTMLElement;
    const feature = target.dataset['feature'];
    if (target.classList.contains('remove-filter') && feature) {
      void store.removeFilter(feature);
    }
  });
  el('summary-panel').addEventListener('click', (event) => {
    const target = event.target as HTMLElement;
    const feature = target.dataset['feature'];
    if (target.classList.contains('impact-feature') && feature) {
      store.editFilter(feature);
    }
  });
  window.addEventListener('popstate', () => {
    const snapshot = decodeState(location.search.slice(1));
    if (snapshot.datasetId) {
      void store.restore(snapshot.datasetId, snapshot.filters, snapshot.mode, snapshot.page);
    }
  });

  if (initial.datasetId) {
    await store.restore(initial.datasetId, initial.filters, initial.mode, initial.page);
  } else if (datasets.length && datasets[0]) {
    await store.selectDataset(datasets[0].id);
  }
}

void boot();

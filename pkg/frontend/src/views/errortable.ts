import type { ErrorRow } from '../types';

export interface TableOptions {
  /** Filters and sorting run client-side over the fetched rows. */
  sortKey?: keyof ErrorRow;
  ascending?: boolean;
}

const COLUMNS: Array<{ key: keyof ErrorRow; title: string }> = [
  { key: 'proximity', title: 'Proximity' },
  { key: 'decision', title: 'Decision' },
  { key: 'outcome_summary', title: 'Outcome' },
  { key: 'error_explanation', title: 'Error note' },
  { key: 'recorded_at', title: 'Recorded' },
];

export function sortRows(rows: ErrorRow[], key: keyof ErrorRow, ascending: boolean): ErrorRow[] {
  const sorted = [...rows].sort((a, b) => {
    const av = a[key] ?? '';
    const bv = b[key] ?? '';
    if (typeof av === 'number' && typeof bv === 'number') return av - bv;
    return String(av).localeCompare(String(bv));
  });
  return ascending ? sorted : sorted.reverse();
}

export function filterRows(
  rows: ErrorRow[],
  decision: string,
  dateFrom: string,
  dateTo: string,
  maxProximity: string,
): ErrorRow[] {
  return rows.filter((r) => {
    if (decision && r.decision !== decision) return false;
    if (dateFrom && r.recorded_at < dateFrom) return false;
    if (dateTo && r.recorded_at > dateTo) return false;
    if (maxProximity !== '' && r.proximity > Number(maxProximity)) return false;
    return true;
  });
}

/** Sortable, filterable error-explanation table; proximity ascending by default. */
export function renderErrorTable(
  container: HTMLElement,
  rows: ErrorRow[],
  options: TableOptions = {},
): void {
  const doc = container.ownerDocument;
  container.innerHTML = '';
  let sortKey: keyof ErrorRow = options.sortKey ?? 'proximity';
  let ascending = options.ascending ?? true;

  const controls = doc.createElement('div');
  controls.className = 'table-filters';
  const decisionFilter = doc.createElement('select');
  decisionFilter.setAttribute('data-role', 'filter-decision');
  const anyOpt = doc.createElement('option');
  anyOpt.value = '';
  anyOpt.textContent = '(any decision)';
  decisionFilter.appendChild(anyOpt);
  for (const d of [...new Set(rows.map((r) => r.decision))].sort()) {
    const opt = doc.createElement('option');
    opt.value = d;
    opt.textContent = d;
    decisionFilter.appendChild(opt);
  }
  const fromInput = doc.createElement('input');
  fromInput.placeholder = 'from (ISO date)';
  fromInput.setAttribute('data-role', 'filter-from');
  const toInput = doc.createElement('input');
  toInput.placeholder = 'to (ISO date)';
  toInput.setAttribute('data-role', 'filter-to');
  const proxInput = doc.createElement('input');
  proxInput.placeholder = 'max proximity';
  proxInput.setAttribute('data-role', 'filter-proximity');
  controls.append(decisionFilter, fromInput, toInput, proxInput);
  container.appendChild(controls);

  const table = doc.createElement('table');
  table.setAttribute('data-role', 'error-table');
  const thead = doc.createElement('thead');
  const headRow = doc.createElement('tr');
  for (const col of COLUMNS) {
    const th = doc.createElement('th');
    th.textContent = col.title;
    th.setAttribute('data-sort', col.key);
    th.addEventListener('click', () => {
      if (sortKey === col.key) {
        ascending = !ascending;
      } else {
        sortKey = col.key;
        ascending = true;
      }
      redraw();
    });
    headRow.appendChild(th);
  }
  thead.appendChild(headRow);
  table.appendChild(thead);
  const tbody = doc.createElement('tbody');
  table.appendChild(tbody);
  container.appendChild(table);

  function redraw(): void {
    const filtered = filterRows(
      rows,
      decisionFilter.value,
      fromInput.value,
      toInput.value,
      proxInput.value,
    );
    const shown = sortRows(filtered, sortKey, ascending);
    tbody.innerHTML = '';
    for (const row of shown) {
      const tr = doc.createElement('tr');
      tr.setAttribute('data-precedent', row.precedent_id);
      const cells = [
        row.proximity.toFixed(4),
        row.decision,
        row.outcome_summary,
        row.error_explanation ?? '',
        row.recorded_at,
      ];
      for (const text of cells) {
        const td = doc.createElement('td');
        td.textContent = text;
        tr.appendChild(td);
      }
      tbody.appendChild(tr);
    }
  }

  decisionFilter.addEventListener('change', redraw);
  for (const input of [fromInput, toInput, proxInput]) {
    input.addEventListener('input', redraw);
  }
  redraw();
}

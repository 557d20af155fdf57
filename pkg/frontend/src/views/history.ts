import type { ErrorRow, StatsWindow } from '../types';
import { renderErrorTable } from './errortable';

/** History tab: the error-explanation table plus progress-over-time numbers. */
export function renderHistory(
  container: HTMLElement,
  rows: ErrorRow[],
  windows: StatsWindow[],
): void {
  const doc = container.ownerDocument;
  container.innerHTML = '';

  const errorsHeading = doc.createElement('h3');
  errorsHeading.textContent = 'Your error notes';
  container.appendChild(errorsHeading);
  const tableMount = doc.createElement('div');
  renderErrorTable(tableMount, rows, { sortKey: 'recorded_at', ascending: false });
  container.appendChild(tableMount);

  const statsHeading = doc.createElement('h3');
  statsHeading.textContent = 'Decision accuracy over time';
  container.appendChild(statsHeading);
  const stats = doc.createElement('table');
  stats.setAttribute('data-role', 'stats-table');
  const head = doc.createElement('tr');
  for (const title of ['Window', 'Your cases', 'Your accuracy', 'Cohort accuracy']) {
    const th = doc.createElement('th');
    th.textContent = title;
    head.appendChild(th);
  }
  stats.appendChild(head);
  for (const w of windows) {
    const tr = doc.createElement('tr');
    const cells = [
      `${w.start.slice(0, 10)} – ${w.end.slice(0, 10)}`,
      String(w.user_cases),
      w.user_accuracy.toFixed(3),
      w.cohort_accuracy.toFixed(3),
    ];
    for (const text of cells) {
      const td = doc.createElement('td');
      td.textContent = text;
      tr.appendChild(td);
    }
    stats.appendChild(tr);
  }
  container.appendChild(stats);
}

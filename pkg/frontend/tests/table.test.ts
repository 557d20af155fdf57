import { beforeEach, describe, expect, it } from 'vitest';

import type { ErrorRow } from '../src/types';
import { filterRows, renderErrorTable, sortRows } from '../src/views/errortable';
import { click, setValue } from './helpers';

const ROWS: ErrorRow[] = [
  {
    precedent_id: 'p-2',
    proximity: 0.21,
    decision: 'cold',
    error_explanation: 'check hydration',
    outcome_summary: 'outcome flu (decision was cold)',
    recorded_at: '2026-02-01T00:00:00+00:00',
  },
  {
    precedent_id: 'p-1',
    proximity: 0.05,
    decision: 'cold',
    error_explanation: 'Check the fever every 2 hours in the first 2 days',
    outcome_summary: 'outcome flu (decision was cold)',
    recorded_at: '2026-01-05T00:00:00+00:00',
  },
  {
    precedent_id: 'p-3',
    proximity: 0.4,
    decision: 'airborne_allergy',
    error_explanation: null,
    outcome_summary: 'outcome airborne_allergy (as decided)',
    recorded_at: '2026-03-01T00:00:00+00:00',
  },
];

function renderedOrder(container: HTMLElement): string[] {
  return Array.from(container.querySelectorAll('tbody tr')).map(
    (tr) => tr.getAttribute('data-precedent')!,
  );
}

describe('sortRows / filterRows', () => {
  it('sorts ascending by proximity', () => {
    expect(sortRows(ROWS, 'proximity', true).map((r) => r.precedent_id)).toEqual([
      'p-1',
      'p-2',
      'p-3',
    ]);
  });

  it('filters by decision, date range and proximity threshold', () => {
    expect(filterRows(ROWS, 'cold', '', '', '').length).toBe(2);
    expect(filterRows(ROWS, '', '2026-02-01', '', '').map((r) => r.precedent_id)).toEqual([
      'p-2',
      'p-3',
    ]);
    expect(filterRows(ROWS, '', '', '2026-02-15', '').length).toBe(2);
    expect(filterRows(ROWS, '', '', '', '0.3').map((r) => r.precedent_id)).toEqual(['p-2', 'p-1']);
  });
});

describe('error table widget', () => {
  let container: HTMLElement;

  beforeEach(() => {
    document.body.innerHTML = '<div id="c"></div>';
    container = document.getElementById('c')!;
    renderErrorTable(container, ROWS);
  });

  it('renders ascending by proximity by default', () => {
    expect(renderedOrder(container)).toEqual(['p-1', 'p-2', 'p-3']);
  });

  it('toggles direction when the sorted column is clicked again', () => {
    click(container.querySelector('th[data-sort=proximity]'));
    expect(renderedOrder(container)).toEqual(['p-3', 'p-2', 'p-1']);
  });

  it('sorts by another column on click', () => {
    click(container.querySelector('th[data-sort=recorded_at]'));
    expect(renderedOrder(container)).toEqual(['p-1', 'p-2', 'p-3']);
    click(container.querySelector('th[data-sort=recorded_at]'));
    expect(renderedOrder(container)).toEqual(['p-3', 'p-2', 'p-1']);
  });

  it('applies the decision filter client-side', () => {
    setValue(container.querySelector('[data-role=filter-decision]'), 'airborne_allergy');
    expect(renderedOrder(container)).toEqual(['p-3']);
  });

  it('applies the proximity threshold filter', () => {
    setValue(container.querySelector('[data-role=filter-proximity]'), '0.1');
    expect(renderedOrder(container)).toEqual(['p-1']);
  });
});

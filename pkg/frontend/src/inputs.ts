import type { ParameterInfo } from './types';

export interface TypedInput {
  root: HTMLElement;
  /** Current value in API encoding, or undefined when blank. */
  read(): unknown;
  /** Inline validation message, or null when the value is acceptable. */
  problem(): string | null;
}

/** One typed input per parameter kind: number field, level select, label multi-select. */
export function buildInput(doc: Document, p: ParameterInfo): TypedInput {
  const root = doc.createElement('div');
  root.className = 'field';
  const label = doc.createElement('label');
  label.textContent = p.units ? `${p.name} (${p.units})` : p.name;
  root.appendChild(label);

  let read: () => unknown;
  if (p.kind === 'numeric') {
    const input = doc.createElement('input');
    input.type = 'number';
    input.step = 'any';
    input.setAttribute('data-param', p.name);
    root.appendChild(input);
    read = () => (input.value.trim() === '' ? undefined : Number(input.value));
  } else if (p.kind === 'ordinal') {
    const select = doc.createElement('select');
    select.setAttribute('data-param', p.name);
    const blank = doc.createElement('option');
    blank.value = '';
    blank.textContent = '(not provided)';
    select.appendChild(blank);
    for (const level of p.levels ?? []) {
      const opt = doc.createElement('option');
      opt.value = level;
      opt.textContent = level;
      select.appendChild(opt);
    }
    root.appendChild(select);
    read = () => (select.value === '' ? undefined : select.value);
  } else {
    const select = doc.createElement('select');
    select.multiple = true;
    select.setAttribute('data-param', p.name);
    for (const l of p.labels ?? []) {
      const opt = doc.createElement('option');
      opt.value = l;
      opt.textContent = l;
      select.appendChild(opt);
    }
    root.appendChild(select);
    read = () => {
      const chosen = Array.from(select.selectedOptions).map((o) => o.value);
      if (chosen.length === 0) return undefined;
      return chosen.length === 1 ? chosen[0] : chosen;
    };
  }

  if (p.help) {
    const help = doc.createElement('small');
    help.className = 'help';
    help.textContent = p.help;
    root.appendChild(help);
  }
  const problemBox = doc.createElement('span');
  problemBox.className = 'problem';
  root.appendChild(problemBox);

  const problem = (): string | null => {
    const value = read();
    if (value === undefined) return null;
    if (p.kind === 'numeric' && p.range) {
      const n = value as number;
      if (Number.isNaN(n)) return `${p.name}: not a number`;
      if (n < p.range[0] || n > p.range[1])
        return `${p.name}: outside declared range [${p.range[0]}, ${p.range[1]}]`;
    }
    return null;
  };

  return {
    root,
    read,
    problem: () => {
      const msg = problem();
      problemBox.textContent = msg ?? '';
      return msg;
    },
  };
}

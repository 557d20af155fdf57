import { describe, expect, it } from 'vitest';

import type { AnswerPayload, QuestionView } from '../src/types';
import { renderFinalize } from '../src/views/finalize';
import { renderQuestion, type QuestionHandlers } from '../src/views/question';
import { TEST_DOMAIN, click, setValue } from './helpers';

function harness() {
  document.body.innerHTML = '<div id="c"></div>';
  const container = document.getElementById('c')!;
  const calls: Array<{ type: string; payload?: unknown }> = [];
  const handlers: QuestionHandlers = {
    answer: (payload: AnswerPayload) => calls.push({ type: 'answer', payload }),
    changeDecision: (solution: string) => calls.push({ type: 'decision', payload: solution }),
    reviseValue: (name: string, value: unknown) =>
      calls.push({ type: 'revise', payload: { name, value } }),
  };
  return { container, calls, handlers };
}

const INCONSISTENCY: QuestionView = {
  id: 'q-1',
  scenario: 1,
  kind: 'inconsistency',
  subject: ['general_aches', 'headache'],
  prompt: 'The combination general_aches = slight; headache = small is not on record together with Airborne Allergy.',
  why: 'This combination of findings falls outside the recorded picture for your decision.',
  details: { conflict: { general_aches: 'slight', headache: 'small' } },
};

const VALUE_REQ: QuestionView = {
  id: 'q-2',
  scenario: 2,
  kind: 'value_request',
  subject: ['temperature'],
  prompt: 'What is the value of temperature (C)?',
  why: 'This parameter is not part of your input.',
  details: {},
};

describe('inconsistency card', () => {
  it('shows the conflicting components and supports insisting', () => {
    const { container, calls, handlers } = harness();
    renderQuestion(container, TEST_DOMAIN, INCONSISTENCY, handlers);
    expect(container.textContent).toContain('general_aches');
    expect(container.textContent).toContain('headache');
    click(container.querySelector('[data-role=insist]'));
    expect(calls).toEqual([{ type: 'answer', payload: { question_id: 'q-1', kind: 'ack' } }]);
  });

  it('changes the decision through the transient picker', () => {
    const { container, calls, handlers } = harness();
    renderQuestion(container, TEST_DOMAIN, INCONSISTENCY, handlers);
    // no solution options in the DOM until the picker is opened
    expect(container.querySelector('[data-role=decision-picker]')).toBeNull();
    click(container.querySelector('[data-role=open-decision]'));
    const picker = container.querySelector('[data-role=decision-picker]') as HTMLSelectElement;
    expect(picker).toBeTruthy();
    picker.value = 'cold';
    click(container.querySelector('[data-role=confirm-decision]'));
    // picker is gone again after confirming
    expect(container.querySelector('[data-role=decision-picker]')).toBeNull();
    expect(calls).toEqual([
      { type: 'answer', payload: { question_id: 'q-1', kind: 'decision', solution: 'cold' } },
    ]);
  });

  it('revises one of the conflicting values', () => {
    const { container, calls, handlers } = harness();
    renderQuestion(container, TEST_DOMAIN, INCONSISTENCY, handlers);
    setValue(container.querySelector('.revise select[data-param=headache]'), 'none');
    click(container.querySelector('[data-role=revise-headache]'));
    expect(calls).toEqual([{ type: 'revise', payload: { name: 'headache', value: 'none' } }]);
  });
});

describe('value request card', () => {
  it('sends the typed value as an answer', () => {
    const { container, calls, handlers } = harness();
    renderQuestion(container, TEST_DOMAIN, VALUE_REQ, handlers);
    setValue(container.querySelector('input[data-param=temperature]'), '37.8');
    click(container.querySelector('[data-role=send-value]'));
    expect(calls).toEqual([
      {
        type: 'answer',
        payload: { question_id: 'q-2', kind: 'value', name: 'temperature', value: 37.8 },
      },
    ]);
  });

  it('rejects an out-of-range value inline without sending', () => {
    const { container, calls, handlers } = harness();
    renderQuestion(container, TEST_DOMAIN, VALUE_REQ, handlers);
    setValue(container.querySelector('input[data-param=temperature]'), '55');
    click(container.querySelector('[data-role=send-value]'));
    expect(calls).toEqual([]);
    expect(container.textContent).toContain('outside declared range');
  });

  it('supports declining with an acknowledgment', () => {
    const { container, calls, handlers } = harness();
    renderQuestion(container, TEST_DOMAIN, VALUE_REQ, handlers);
    click(container.querySelector('[data-role=skip]'));
    expect(calls).toEqual([{ type: 'answer', payload: { question_id: 'q-2', kind: 'ack' } }]);
  });
});

describe('finalize form', () => {
  it('requires a non-empty prognosis', () => {
    document.body.innerHTML = '<div id="c"></div>';
    const container = document.getElementById('c')!;
    let submitted: unknown = null;
    renderFinalize(container, TEST_DOMAIN, 'flu', 'State your final decision.', (s) => {
      submitted = s;
    });
    click(container.querySelector('[data-role=finalize]'));
    expect(submitted).toBeNull();
    expect(container.textContent).toContain('prognosis is required');
    setValue(container.querySelector('[data-role=prognosis]'), 'Recovery in ten days.');
    click(container.querySelector('[data-role=finalize]'));
    expect(submitted).toEqual({ prognosis: 'Recovery in ten days.', solution: 'flu' });
  });
});

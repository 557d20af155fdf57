import { beforeEach, describe, expect, it } from 'vitest';

import { renderIntake, type IntakeSubmission } from '../src/views/intake';
import { TEST_DOMAIN, click, selectMulti, setValue } from './helpers';

describe('intake form', () => {
  let container: HTMLElement;
  let submitted: IntakeSubmission | null;

  beforeEach(() => {
    document.body.innerHTML = '<div id="c"></div>';
    container = document.getElementById('c')!;
    submitted = null;
    renderIntake(container, TEST_DOMAIN, (s) => {
      submitted = s;
    });
  });

  it('renders a typed input per parameter and a decision selector', () => {
    expect(container.querySelector('[data-role=decision]')).toBeTruthy();
    expect(container.querySelector('input[data-param=temperature]')).toBeTruthy();
    const headache = container.querySelector('select[data-param=headache]') as HTMLSelectElement;
    expect(headache).toBeTruthy();
    expect(Array.from(headache.options).map((o) => o.value)).toContain('moderate');
    const sneezing = container.querySelector('select[data-param=sneezing]') as HTMLSelectElement;
    expect(sneezing.multiple).toBe(true);
  });

  it('shows the per-parameter help text slot', () => {
    expect(container.textContent).toContain('Body temperature measured at rest.');
  });

  it('blocks submission with no parameters', () => {
    click(container.querySelector('[data-role=start]'));
    expect(submitted).toBeNull();
    expect(container.textContent).toContain('at least one parameter');
  });

  it('flags a numeric value outside the declared range inline', () => {
    setValue(container.querySelector('input[data-param=temperature]'), '50');
    click(container.querySelector('[data-role=start]'));
    expect(submitted).toBeNull();
    expect(container.textContent).toContain('outside declared range');
  });

  it('submits only the filled parameters in API encoding', () => {
    const decision = container.querySelector('[data-role=decision]') as HTMLSelectElement;
    decision.value = 'airborne_allergy';
    setValue(container.querySelector('select[data-param=general_aches]'), 'slight');
    setValue(container.querySelector('select[data-param=headache]'), 'small');
    selectMulti(container.querySelector('select[data-param=sneezing]'), ['yes']);
    selectMulti(container.querySelector('select[data-param=stuffy_runny_nose]'), ['yes']);
    selectMulti(container.querySelector('select[data-param=cough]'), ['no']);
    selectMulti(container.querySelector('select[data-param=allergy_anamnesis]'), ['yes']);
    click(container.querySelector('[data-role=start]'));
    expect(submitted).not.toBeNull();
    expect(submitted!.solution).toBe('airborne_allergy');
    expect(submitted!.evidence).toEqual({
      general_aches: 'slight',
      headache: 'small',
      sneezing: 'yes',
      stuffy_runny_nose: 'yes',
      cough: 'no',
      allergy_anamnesis: 'yes',
    });
  });
});

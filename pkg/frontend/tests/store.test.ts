import { describe, expect, it } from 'vitest';

import { SessionStore } from '../src/store';
import type { SessionView } from '../src/types';

function view(id: string, state = 'AWAIT_ANSWER'): SessionView {
  return {
    id,
    user: 'u',
    domain: 'd',
    state,
    solution: 'cold',
    evidence: {},
    pending_question: null,
    finalize_prompt: null,
    final_solution: null,
    transcript: [],
  };
}

describe('SessionStore', () => {
  it('accepts responses in order and bumps the revision', () => {
    const store = new SessionStore();
    const t1 = store.begin();
    expect(store.accept(t1, view('s-1'))).toBe(true);
    expect(store.get().revision).toBe(1);
    expect(store.get().view?.id).toBe('s-1');
  });

  it('discards a stale response that lost the race', () => {
    const store = new SessionStore();
    const stale = store.begin();
    const fresh = store.begin();
    expect(store.accept(fresh, view('s-new'))).toBe(true);
    expect(store.accept(stale, view('s-old'))).toBe(false);
    expect(store.get().view?.id).toBe('s-new');
  });

  it('keeps errors visible but non-blocking', () => {
    const store = new SessionStore();
    const t = store.begin();
    store.fail('409: another request in flight');
    expect(store.get().error).toContain('409');
    expect(store.get().busy).toBe(false);
    // the session can still progress afterwards
    const t2 = store.begin();
    expect(t2).toBeGreaterThanOrEqual(t);
    expect(store.accept(t2, view('s-1'))).toBe(true);
    expect(store.get().error).toBeNull();
  });

  it('notifies subscribers on every change', () => {
    const store = new SessionStore();
    let calls = 0;
    store.subscribe(() => {
      calls += 1;
    });
    const t = store.begin();
    store.accept(t, view('s-1'));
    store.fail('x');
    store.clearError();
    expect(calls).toBe(4);
  });
});

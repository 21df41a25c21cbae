import { Window } from 'happy-dom';
import { beforeEach, describe, expect, it } from 'vitest';

import {
  makeTiles,
  newTaskState,
  stageIn,
  type ClientSessionState,
} from '../src/state.js';
import type { ReviewResponse } from '../src/types.js';
import {
  draggedTileId,
  renderDone,
  renderQuestionnaire,
  renderReview,
  renderTask,
} from '../src/views.js';

let doc: Document;

beforeEach(() => {
  const window = new Window();
  doc = window.document as unknown as Document;
});

function twelveTileState(): ClientSessionState {
  const ids = Array.from({ length: 12 }, (_, i) => i + 1);
  const tiles = makeTiles(ids, ids.map((id) => `assets/plan_${id}.png`));
  return newTaskState('s-1', 3, 10, tiles);
}

const NO_HANDLERS = {
  onToggle: () => {},
  onDropIn: () => {},
  onDragOut: () => {},
  onSubmit: () => {},
  onRetry: () => {},
};

describe('task screen', () => {
  it('shows every panel tile, an empty drop zone, and the iteration counter', () => {
    const section = renderTask(doc, twelveTileState(), NO_HANDLERS);
    expect(section.querySelectorAll('#panel-grid .tile')).toHaveLength(12);
    const zone = section.querySelector('#drop-zone');
    expect(zone?.querySelectorAll('.tile')).toHaveLength(0);
    expect(zone?.textContent).toContain('empty');
    expect(section.querySelector('#iteration-counter')?.textContent).toBe(
      'Iteration 3 of 10',
    );
  });

  it('staged tiles appear inside the drop zone and are marked in the grid', () => {
    const state = twelveTileState();
    stageIn(state, 4);
    stageIn(state, 9);
    const section = renderTask(doc, state, NO_HANDLERS);
    const zoneIds = Array.from(
      section.querySelectorAll('#drop-zone .tile'),
      (el) => el.getAttribute('data-id'),
    );
    expect(zoneIds).toEqual(['4', '9']);
    expect(section.querySelectorAll('#panel-grid .tile.staged')).toHaveLength(2);
  });

  it('clicking a grid tile reports a toggle for that id', () => {
    const toggled: number[] = [];
    const section = renderTask(doc, twelveTileState(), {
      ...NO_HANDLERS,
      onToggle: (id) => toggled.push(id),
    });
    const tile = section.querySelector<HTMLElement>('.tile[data-id="7"]');
    tile?.click();
    expect(toggled).toEqual([7]);
  });

  it('a failed image load leaves a placeholder tile that still toggles', () => {
    const toggled: number[] = [];
    const section = renderTask(doc, twelveTileState(), {
      ...NO_HANDLERS,
      onToggle: (id) => toggled.push(id),
    });
    const tile = section.querySelector<HTMLElement>('.tile[data-id="2"]');
    const img = tile?.querySelector('img');
    img?.dispatchEvent(new (doc.defaultView as any).Event('error'));
    expect(tile?.querySelector('img')).toBeNull();
    expect(tile?.querySelector('.tile-placeholder')).not.toBeNull();
    tile?.click();
    expect(toggled).toEqual([2]);
  });

  it('submit stays enabled with nothing staged and disables only while submitting', () => {
    const state = twelveTileState();
    let section = renderTask(doc, state, NO_HANDLERS);
    let button = section.querySelector<HTMLButtonElement>('#submit-selection');
    expect(button?.disabled).toBe(false);

    state.submitting = true;
    section = renderTask(doc, state, NO_HANDLERS);
    button = section.querySelector<HTMLButtonElement>('#submit-selection');
    expect(button?.disabled).toBe(true);
  });

  it('a retry banner with a retry button appears after a network failure', () => {
    const state = twelveTileState();
    state.retryMessage = 'Connection problem — nothing was lost.';
    let retried = 0;
    const section = renderTask(doc, state, {
      ...NO_HANDLERS,
      onRetry: () => {
        retried += 1;
      },
    });
    expect(section.querySelector('#retry-banner')?.textContent).toContain(
      'Connection problem',
    );
    section.querySelector<HTMLElement>('#retry-submit')?.click();
    expect(retried).toBe(1);
  });

  it('drop events resolve the dragged tile id from the data transfer payload', () => {
    expect(
      draggedTileId({
        dataTransfer: { getData: (type: string) => (type === 'text/plain' ? '11' : '') },
      } as unknown as DragEvent),
    ).toBe(11);
    expect(
      draggedTileId({
        dataTransfer: { getData: () => 'not-a-number' },
      } as unknown as DragEvent),
    ).toBeNull();
    expect(draggedTileId({ dataTransfer: null } as unknown as DragEvent)).toBeNull();
  });
});

describe('questionnaire screen', () => {
  it('submitting without criteria shows inline validation and does not call back', () => {
    let submitted = 0;
    const state = twelveTileState();
    state.phase = 'questionnaire';
    const section = renderQuestionnaire(doc, state, {
      onSubmit: () => {
        submitted += 1;
      },
      reviewRoute: '#/review',
    });
    const error = section.querySelector<HTMLElement>('#criteria-error');
    expect(error?.hidden).toBe(true);

    const form = section.querySelector('#questionnaire-form');
    form?.dispatchEvent(new (doc.defaultView as any).Event('submit', { cancelable: true }));
    expect(submitted).toBe(0);
    expect(error?.hidden).toBe(false);
    expect(error?.textContent).toContain('criteria');
  });

  it('criteria text plus optional fields are passed through, blanks as null', () => {
    const submissions: unknown[] = [];
    const state = twelveTileState();
    state.phase = 'questionnaire';
    const section = renderQuestionnaire(doc, state, {
      onSubmit: (criteriaText, age, occupation) => {
        submissions.push([criteriaText, age, occupation]);
      },
      reviewRoute: '#/review',
    });
    const criteria = section.querySelector<HTMLTextAreaElement>('#criteria');
    criteria!.value = '  room count and shape  ';
    const form = section.querySelector('#questionnaire-form');
    form?.dispatchEvent(new (doc.defaultView as any).Event('submit', { cancelable: true }));
    expect(submissions).toEqual([['room count and shape', null, null]]);
  });

  it('age and occupation are forwarded when filled in', () => {
    const submissions: unknown[] = [];
    const state = twelveTileState();
    state.phase = 'questionnaire';
    const section = renderQuestionnaire(doc, state, {
      onSubmit: (criteriaText, age, occupation) => {
        submissions.push([criteriaText, age, occupation]);
      },
      reviewRoute: '#/review',
    });
    section.querySelector<HTMLTextAreaElement>('#criteria')!.value = 'openness';
    section.querySelector<HTMLInputElement>('#age')!.value = '34';
    section.querySelector<HTMLSelectElement>('#occupation')!.value = 'architect';
    section
      .querySelector('#questionnaire-form')
      ?.dispatchEvent(new (doc.defaultView as any).Event('submit', { cancelable: true }));
    expect(submissions).toEqual([['openness', 34, 'architect']]);
  });
});

describe('review screen', () => {
  const review: ReviewResponse = {
    session_id: 's-1',
    phase: 'completed',
    iterations_total: 2,
    iterations: [
      {
        iteration: 1,
        shown: [1, 2, 3],
        selected: [2],
        image_uris: ['a.png', 'b.png', 'c.png'],
        recorded_at: '2024-01-01T00:00:00+00:00',
      },
      {
        iteration: 2,
        shown: [4, 5, 6],
        selected: [],
        image_uris: ['d.png', 'e.png', 'f.png'],
        recorded_at: '2024-01-01T00:01:00+00:00',
      },
    ],
    questionnaire: { criteria_text: 'layout', age: null, occupation: null },
  };

  it('lists every iteration with the selected plans highlighted', () => {
    const section = renderReview(doc, review, '#/done');
    const rows = section.querySelectorAll('.review-row');
    expect(rows).toHaveLength(2);
    const first = rows[0]!;
    expect(first.querySelectorAll('.review-tile')).toHaveLength(3);
    const highlighted = Array.from(
      first.querySelectorAll('.review-tile.selected'),
      (el) => el.getAttribute('data-id'),
    );
    expect(highlighted).toEqual(['2']);
    expect(rows[1]!.querySelectorAll('.review-tile.selected')).toHaveLength(0);
  });

  it('contains no mutating controls', () => {
    const section = renderReview(doc, review, '#/done');
    const mutating = section.querySelectorAll(
      'button, input, select, textarea, form, [contenteditable="true"]',
    );
    expect(mutating).toHaveLength(0);
  });

  it('shows the questionnaire answers read-only when present', () => {
    const section = renderReview(doc, review, '#/done');
    expect(section.querySelector('.review-questionnaire')?.textContent).toContain('layout');
  });
});

describe('done screen', () => {
  it('thanks the respondent and links to the review', () => {
    const section = renderDone(doc, '#/review');
    expect(section.textContent).toContain('Thank you');
    expect(section.querySelector('#review-link')?.getAttribute('href')).toBe('#/review');
  });
});

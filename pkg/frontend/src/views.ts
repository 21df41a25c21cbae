/** DOM rendering, one function per screen. No framework: each render builds
 * a fresh subtree from state, and the controller swaps it into the root.
 *
 * Interaction contract (mirrors the task screen's Fig-2-style layout):
 * thumbnails in a grid on the left, a blue drop area on the right; dragging
 * a tile into the area stages it, dragging it back out (or clicking either
 * copy) unstages it. Clicking is a full fallback for drag-and-drop.
 */

import type { ClientSessionState, PanelTile } from './state.js';
import type { ReviewResponse } from './types.js';

export interface TaskHandlers {
  onToggle: (id: number) => void;
  onDropIn: (id: number) => void;
  onDragOut: (id: number) => void;
  onSubmit: () => void;
  onRetry: () => void;
}

export interface QuestionnaireHandlers {
  onSubmit: (criteriaText: string, age: number | null, occupation: string | null) => void;
  reviewRoute: string;
}

export const OCCUPATIONS = [
  'architect',
  'student',
  'civil engineer',
  'urban planner',
  'other',
];

const DRAG_MIME = 'text/plain';

/** Parse the dragged tile id out of a drop event; null when absent/garbled. */
export function draggedTileId(event: DragEvent): number | null {
  const raw = event.dataTransfer?.getData(DRAG_MIME);
  if (!raw) {
    return null;
  }
  const id = Number.parseInt(raw, 10);
  return Number.isNaN(id) ? null : id;
}

function tileElement(
  doc: Document,
  tile: PanelTile,
  options: { staged: boolean; onActivate: (id: number) => void },
): HTMLElement {
  const figure = doc.createElement('figure');
  figure.className = options.staged ? 'tile staged' : 'tile';
  figure.dataset.id = String(tile.id);
  figure.draggable = true;

  const img = doc.createElement('img');
  img.src = tile.imageUri;
  img.alt = `design ${tile.id}`;
  // A broken thumbnail becomes a labelled placeholder; the tile itself stays
  // draggable and clickable so the design remains selectable.
  img.addEventListener('error', () => {
    const placeholder = doc.createElement('div');
    placeholder.className = 'tile-placeholder';
    placeholder.textContent = `design ${tile.id}`;
    img.replaceWith(placeholder);
  });
  figure.appendChild(img);

  const caption = doc.createElement('figcaption');
  caption.textContent = `#${tile.id}`;
  figure.appendChild(caption);

  figure.addEventListener('click', () => options.onActivate(tile.id));
  figure.addEventListener('dragstart', (event: DragEvent) => {
    event.dataTransfer?.setData(DRAG_MIME, String(tile.id));
  });
  return figure;
}

export function renderTask(
  doc: Document,
  state: ClientSessionState,
  handlers: TaskHandlers,
): HTMLElement {
  const section = doc.createElement('section');
  section.id = 'task';

  const counter = doc.createElement('h2');
  counter.id = 'iteration-counter';
  counter.textContent = `Iteration ${state.iteration} of ${state.iterationsTotal}`;
  section.appendChild(counter);

  const hint = doc.createElement('p');
  hint.className = 'task-hint';
  hint.textContent =
    'Drag the floor plans that look similar into the blue area (or click to toggle). ' +
    'Selecting nothing is allowed.';
  section.appendChild(hint);

  const layout = doc.createElement('div');
  layout.className = 'task-layout';
  section.appendChild(layout);

  const grid = doc.createElement('div');
  grid.id = 'panel-grid';
  layout.appendChild(grid);
  for (const tile of state.panel) {
    grid.appendChild(
      tileElement(doc, tile, {
        staged: state.staged.has(tile.id),
        onActivate: handlers.onToggle,
      }),
    );
  }
  // Dropping a zone tile back onto the grid unstages it.
  grid.addEventListener('dragover', (event: DragEvent) => event.preventDefault());
  grid.addEventListener('drop', (event: DragEvent) => {
    event.preventDefault();
    const id = draggedTileId(event);
    if (id !== null) {
      handlers.onDragOut(id);
    }
  });

  const zone = doc.createElement('div');
  zone.id = 'drop-zone';
  zone.className = 'blue-zone';
  layout.appendChild(zone);
  const staged = state.panel.filter((tile) => state.staged.has(tile.id));
  if (staged.length === 0) {
    const empty = doc.createElement('p');
    empty.className = 'zone-hint';
    empty.textContent = 'Similar group (empty)';
    zone.appendChild(empty);
  }
  for (const tile of staged) {
    zone.appendChild(
      tileElement(doc, tile, { staged: true, onActivate: handlers.onDragOut }),
    );
  }
  zone.addEventListener('dragover', (event: DragEvent) => event.preventDefault());
  zone.addEventListener('drop', (event: DragEvent) => {
    event.preventDefault();
    const id = draggedTileId(event);
    if (id !== null) {
      handlers.onDropIn(id);
    }
  });

  if (state.retryMessage !== null) {
    const banner = doc.createElement('div');
    banner.id = 'retry-banner';
    banner.textContent = state.retryMessage + ' ';
    const retry = doc.createElement('button');
    retry.id = 'retry-submit';
    retry.type = 'button';
    retry.textContent = 'Retry';
    retry.addEventListener('click', () => handlers.onRetry());
    banner.appendChild(retry);
    section.appendChild(banner);
  }

  const submit = doc.createElement('button');
  submit.id = 'submit-selection';
  submit.type = 'button';
  submit.textContent = 'Submit selection';
  submit.disabled = state.submitting;
  submit.addEventListener('click', () => handlers.onSubmit());
  section.appendChild(submit);

  return section;
}

export function renderQuestionnaire(
  doc: Document,
  state: ClientSessionState,
  handlers: QuestionnaireHandlers,
): HTMLElement {
  const section = doc.createElement('section');
  section.id = 'questionnaire';

  const heading = doc.createElement('h2');
  heading.textContent = 'Closing questionnaire';
  section.appendChild(heading);

  const form = doc.createElement('form');
  form.id = 'questionnaire-form';
  section.appendChild(form);

  const criteriaLabel = doc.createElement('label');
  criteriaLabel.htmlFor = 'criteria';
  criteriaLabel.textContent = 'Which criteria did you use to group the plans?';
  form.appendChild(criteriaLabel);

  const criteria = doc.createElement('textarea');
  criteria.id = 'criteria';
  criteria.name = 'criteria';
  criteria.required = true;
  form.appendChild(criteria);

  const criteriaError = doc.createElement('p');
  criteriaError.id = 'criteria-error';
  criteriaError.className = 'validation-error';
  criteriaError.hidden = true;
  criteriaError.textContent = 'Please describe the criteria you used.';
  form.appendChild(criteriaError);

  const ageLabel = doc.createElement('label');
  ageLabel.htmlFor = 'age';
  ageLabel.textContent = 'Age (optional)';
  form.appendChild(ageLabel);
  const age = doc.createElement('input');
  age.id = 'age';
  age.name = 'age';
  age.type = 'number';
  age.min = '0';
  form.appendChild(age);

  const occupationLabel = doc.createElement('label');
  occupationLabel.htmlFor = 'occupation';
  occupationLabel.textContent = 'Occupation (optional)';
  form.appendChild(occupationLabel);
  const occupation = doc.createElement('select');
  occupation.id = 'occupation';
  occupation.name = 'occupation';
  const blank = doc.createElement('option');
  blank.value = '';
  blank.textContent = '—';
  occupation.appendChild(blank);
  for (const name of OCCUPATIONS) {
    const option = doc.createElement('option');
    option.value = name;
    option.textContent = name;
    occupation.appendChild(option);
  }
  form.appendChild(occupation);

  const submit = doc.createElement('button');
  submit.id = 'submit-questionnaire';
  submit.type = 'submit';
  submit.textContent = 'Finish';
  submit.disabled = state.submitting;
  form.appendChild(submit);

  form.addEventListener('submit', (event: Event) => {
    event.preventDefault();
    const text = criteria.value.trim();
    if (text === '') {
      criteriaError.hidden = false;
      return;
    }
    criteriaError.hidden = true;
    const ageValue = age.value.trim() === '' ? null : Number.parseInt(age.value, 10);
    const occupationValue = occupation.value === '' ? null : occupation.value;
    handlers.onSubmit(text, ageValue, occupationValue);
  });

  const reviewLink = doc.createElement('a');
  reviewLink.id = 'review-link';
  reviewLink.href = handlers.reviewRoute;
  reviewLink.textContent = 'Review your selections';
  section.appendChild(reviewLink);

  if (state.retryMessage !== null) {
    const banner = doc.createElement('div');
    banner.id = 'retry-banner';
    banner.textContent = state.retryMessage;
    section.appendChild(banner);
  }

  return section;
}

/** Read-only record of the session: every iteration's panel with the chosen
 * group highlighted. Deliberately free of interactive form controls — the
 * only element allowed besides text and images is the back navigation link.
 */
export function renderReview(
  doc: Document,
  review: ReviewResponse,
  backRoute: string,
): HTMLElement {
  const section = doc.createElement('section');
  section.id = 'review';

  const heading = doc.createElement('h2');
  heading.textContent = 'Your selections (read-only)';
  section.appendChild(heading);

  for (const row of review.iterations) {
    const div = doc.createElement('div');
    div.className = 'review-row';
    div.dataset.iteration = String(row.iteration);

    const title = doc.createElement('h3');
    title.textContent = `Iteration ${row.iteration}`;
    div.appendChild(title);

    const panel = doc.createElement('div');
    panel.className = 'review-panel';
    row.shown.forEach((id, index) => {
      const tile = doc.createElement('span');
      tile.className = row.selected.includes(id) ? 'review-tile selected' : 'review-tile';
      tile.dataset.id = String(id);
      const img = doc.createElement('img');
      img.src = row.image_uris[index] ?? '';
      img.alt = `design ${id}`;
      tile.appendChild(img);
      const label = doc.createElement('small');
      label.textContent = `#${id}`;
      tile.appendChild(label);
      panel.appendChild(tile);
    });
    div.appendChild(panel);
    section.appendChild(div);
  }

  if (review.questionnaire !== null) {
    const q = doc.createElement('p');
    q.className = 'review-questionnaire';
    q.textContent = `Stated criteria: ${review.questionnaire.criteria_text}`;
    section.appendChild(q);
  }

  const back = doc.createElement('a');
  back.id = 'back-link';
  back.href = backRoute;
  back.textContent = 'Back';
  section.appendChild(back);

  return section;
}

export function renderDone(doc: Document, reviewRoute: string): HTMLElement {
  const section = doc.createElement('section');
  section.id = 'done';

  const heading = doc.createElement('h2');
  heading.textContent = 'Finished';
  section.appendChild(heading);

  const message = doc.createElement('p');
  message.textContent = 'The exercise is finished. Thank you for taking part!';
  section.appendChild(message);

  const reviewLink = doc.createElement('a');
  reviewLink.id = 'review-link';
  reviewLink.href = reviewRoute;
  reviewLink.textContent = 'Review your selections';
  section.appendChild(reviewLink);

  return section;
}

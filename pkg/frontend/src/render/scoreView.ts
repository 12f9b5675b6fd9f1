// Score panel with the three disclosure levels; bands by default so a
// shared screen leaks no numbers.

import type { AppStore } from '../store.js';
import type { Redaction, ScoreEntryDto } from '../types.js';

const MODES: Redaction[] = ['full', 'bands', 'ranks'];

function entryLine(entry: ScoreEntryDto, position: number): string {
  if (entry.missing) return `${entry.label}: no judgments yet`;
  if (entry.score !== undefined) return `${entry.label}: ${entry.score.toFixed(3)}`;
  if (entry.band !== undefined) return `${entry.label}: ${entry.band}`;
  return `${position}. ${entry.label}`;
}

export function renderScores(container: HTMLElement, store: AppStore): void {
  container.textContent = '';

  const heading = document.createElement('h3');
  heading.textContent = 'Scores';
  container.appendChild(heading);

  const picker = document.createElement('div');
  picker.className = 'redaction-picker';
  for (const mode of MODES) {
    const button = document.createElement('button');
    button.textContent = mode;
    button.className = mode === store.redaction ? 'mode selected' : 'mode';
    button.addEventListener('click', () => {
      void store.setRedaction(mode);
    });
    picker.appendChild(button);
  }
  container.appendChild(picker);

  if (store.scoreProblem) {
    const problem = document.createElement('p');
    problem.className = 'muted';
    problem.textContent = store.scoreProblem;
    container.appendChild(problem);
    return;
  }
  if (!store.scores) return;

  const list = document.createElement('ol');
  list.className = 'score-entries';
  store.scores.entries.forEach((entry, i) => {
    const item = document.createElement('li');
    item.textContent = entryLine(entry, i + 1);
    list.appendChild(item);
  });
  container.appendChild(list);

  const recommendation = document.createElement('p');
  recommendation.className = 'recommendation';
  recommendation.textContent = `recommendation: ${store.scores.recommendation}`;
  container.appendChild(recommendation);

  for (const diagnostic of store.scores.diagnostics) {
    const line = document.createElement('p');
    line.className = 'diagnostic';
    line.textContent = diagnostic;
    container.appendChild(line);
  }

  const report = document.createElement('pre');
  report.className = 'report';
  report.textContent = store.scores.report;
  container.appendChild(report);
}

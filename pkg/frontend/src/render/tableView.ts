// Spreadsheet pane: managed tables drawn at their grid coordinates,
// judgment cells as inputs, everything else read-only.

import type { AppStore } from '../store.js';
import { cellAt, cellText, gridExtent, roleAt } from '../tree.js';

function columnName(col: number): string {
  // 0 -> A, 25 -> Z, 26 -> AA, spreadsheet style
  let name = '';
  let n = col;
  do {
    name = String.fromCharCode(65 + (n % 26)) + name;
    n = Math.floor(n / 26) - 1;
  } while (n >= 0);
  return name;
}

export function renderTables(container: HTMLElement, store: AppStore): void {
  container.textContent = '';
  if (!store.doc) return;
  const doc = store.doc;
  const extent = gridExtent(doc);

  if (extent.rows === 0) {
    const hint = document.createElement('p');
    hint.className = 'muted';
    hint.textContent = 'No tables yet. Use "Save and Sync to Sheet" to materialize the tree.';
    container.appendChild(hint);
    return;
  }

  const sheet = document.createElement('table');
  sheet.className = 'sheet';

  const headRow = document.createElement('tr');
  headRow.appendChild(document.createElement('th'));
  for (let c = 0; c < extent.cols; c++) {
    const th = document.createElement('th');
    th.textContent = columnName(c);
    headRow.appendChild(th);
  }
  sheet.appendChild(headRow);

  for (let r = 0; r < extent.rows; r++) {
    const row = document.createElement('tr');
    const rowHead = document.createElement('th');
    rowHead.textContent = String(r + 1);
    row.appendChild(rowHead);

    for (let c = 0; c < extent.cols; c++) {
      const td = document.createElement('td');
      const role = roleAt(doc, r, c);
      const text = cellText(cellAt(doc, r, c));
      td.dataset.row = String(r);
      td.dataset.col = String(c);

      if (role.kind === 'judgment') {
        td.className = 'cell judgment';
        const input = document.createElement('input');
        input.type = 'text';
        input.value = text;
        input.disabled = store.busy;
        // typed text goes to the service verbatim; blank erases,
        // X runs tally marks, numbers stay numbers
        input.addEventListener('change', () => {
          void store.setCells([{ row: r, col: c, value: input.value }]);
        });
        td.appendChild(input);
      } else {
        td.className =
          role.kind === 'outside' ? (text ? 'cell user' : 'cell empty') : `cell ${role.kind}`;
        td.textContent = text;
      }
      row.appendChild(td);
    }
    sheet.appendChild(row);
  }

  container.appendChild(sheet);
}

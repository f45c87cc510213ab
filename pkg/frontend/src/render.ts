/**
 * DOM and SVG rendering. This layer draws view models; it never touches
 * the API or invents numbers.
 */

import type { ElicitationViewModel } from './elicitation';
import type { ResultViewModel } from './results';
import type { SweepChartModel } from './sensitivity';
import { anchorLabel, POSITION_COUNT } from './saaty';

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  children: (Node | string)[] = [],
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  for (const child of children) {
    node.append(child);
  }
  return node;
}

export function clear(node: HTMLElement): void {
  while (node.firstChild) node.removeChild(node.firstChild);
}

export function renderCrBadge(model: ElicitationViewModel): HTMLElement {
  const badge = el('span', { class: 'cr-badge' }, [model.crBadge.label]);
  if (model.crBadge.acceptable === true) badge.classList.add('cr-ok');
  if (model.crBadge.acceptable === false) badge.classList.add('cr-breach');
  return badge;
}

export function renderJudgmentGrid(
  model: ElicitationViewModel,
  onSubmit: (position: number) => void,
): HTMLElement {
  const root = el('section', { class: 'judgment-grid' });
  root.append(
    el('h2', {}, [`Comparisons: ${model.matrix}`]),
    el('p', {}, [`${model.given} of ${model.required} pairs judged`]),
    renderCrBadge(model),
  );
  if (model.reviewHint) {
    root.append(
      el('p', { class: 'review-hint' }, [
        `Judgments look inconsistent; review the triangle ${model.reviewHint.join(' / ')}.`,
      ]),
    );
  }
  if (!model.current) {
    root.append(el('p', { class: 'done' }, ['All pairs judged.']));
    return root;
  }
  const [left, right] = model.current;
  const slider = el('input', {
    type: 'range',
    min: '0',
    max: String(POSITION_COUNT - 1),
    step: '1',
    value: String(model.sliderPosition),
    class: 'saaty-slider',
  });
  const caption = el('p', { class: 'anchor' }, [
    anchorLabel(model.sliderPosition, left, right),
  ]);
  slider.addEventListener('input', () => {
    caption.textContent = anchorLabel(Number(slider.value), left, right);
  });
  const submit = el('button', {}, ['Record judgment']);
  submit.addEventListener('click', () => onSubmit(Number(slider.value)));
  root.append(
    el('p', { class: 'pair' }, [`${left}  vs  ${right}`]),
    slider,
    caption,
    submit,
  );
  return root;
}

export function renderResults(model: ResultViewModel): HTMLElement {
  const root = el('section', { class: 'results' });
  if (model.outcome !== 'ok') {
    root.append(el('h2', {}, ['No feasible alternatives']));
  } else {
    root.append(el('h2', {}, [`Ranking (${model.method})`]));
    const table = el('table', { class: 'ranking' });
    for (const row of model.rows) {
      const bar = el('div', {
        class: 'score-bar',
        style: `width:${(row.barFraction * 100).toFixed(1)}%`,
      });
      table.append(
        el('tr', {}, [
          el('td', {}, [String(row.rank)]),
          el('td', {}, [row.alternative]),
          el('td', {}, [row.score.toFixed(4)]),
          el('td', { class: 'bar-cell' }, [bar]),
          el('td', {}, [row.versusNext ?? '']),
        ]),
      );
    }
    root.append(table);
    if (model.ratioReadouts.length) {
      root.append(
        el(
          'ul',
          { class: 'ratios' },
          model.ratioReadouts.map((text) => el('li', {}, [text])),
        ),
      );
    }
  }
  if (model.excluded.length) {
    root.append(el('h3', {}, ['Filtered out']));
    const list = el('ul', { class: 'excluded' });
    for (const entry of model.excluded) {
      const reasons = entry.violations
        .map((v) => `${v.criterion_id} ${v.bound} ${v.threshold} (observed ${v.observed})`)
        .join('; ');
      list.append(el('li', {}, [`${entry.alternative}: ${reasons}`]));
    }
    root.append(list);
  }
  for (const warning of model.warnings) {
    root.append(el('p', { class: 'warning' }, [warning]));
  }
  return root;
}

export function renderSweepChart(
  model: SweepChartModel,
  width = 560,
  height = 280,
): SVGSVGElement {
  const svgNS = 'http://www.w3.org/2000/svg';
  const svg = document.createElementNS(svgNS, 'svg');
  svg.setAttribute('viewBox', `0 0 ${width} ${height}`);
  svg.setAttribute('class', 'sweep-chart');
  const pad = 32;
  const xFor = (weight: number) => pad + weight * (width - 2 * pad);
  const maxScore = Math.max(
    ...model.series.flatMap((series) => series.points.map((point) => point.score)),
    1e-9,
  );
  const yFor = (score: number) => height - pad - (score / maxScore) * (height - 2 * pad);

  for (const marker of model.reversalMarkers) {
    const line = document.createElementNS(svgNS, 'line');
    line.setAttribute('x1', String(xFor(marker)));
    line.setAttribute('x2', String(xFor(marker)));
    line.setAttribute('y1', String(pad));
    line.setAttribute('y2', String(height - pad));
    line.setAttribute('class', 'reversal-marker');
    svg.append(line);
  }
  if (model.baselineWeight !== null) {
    const line = document.createElementNS(svgNS, 'line');
    line.setAttribute('x1', String(xFor(model.baselineWeight)));
    line.setAttribute('x2', String(xFor(model.baselineWeight)));
    line.setAttribute('y1', String(pad));
    line.setAttribute('y2', String(height - pad));
    line.setAttribute('class', 'baseline-marker');
    svg.append(line);
  }
  model.series.forEach((series, index) => {
    const path = document.createElementNS(svgNS, 'polyline');
    path.setAttribute(
      'points',
      series.points.map((point) => `${xFor(point.weight)},${yFor(point.score)}`).join(' '),
    );
    path.setAttribute('class', `series series-${index}`);
    path.setAttribute('fill', 'none');
    svg.append(path);
    const label = document.createElementNS(svgNS, 'text');
    const last = series.points[series.points.length - 1]!;
    label.setAttribute('x', String(xFor(last.weight) - 4));
    label.setAttribute('y', String(yFor(last.score) - 6));
    label.textContent = series.alternative;
    svg.append(label);
  });
  return svg;
}

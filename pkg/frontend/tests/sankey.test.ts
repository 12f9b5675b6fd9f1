import { describe, expect, it } from 'vitest';

import { sankeyLayout } from '../src/sankey.js';
import { nextImportance } from '../src/tree.js';
import { makeDoc } from './helpers.js';

describe('sankey layout', () => {
  it('splits ribbon heights 1:2 for an x1 child beside an x2 child', () => {
    const doc = makeDoc({
      id: 0,
      name: 'Goal',
      children: [
        { id: 1, name: 'Employee preferences', importance: 1 },
        { id: 2, name: 'Calendar obligations', importance: 2 },
      ],
    });
    const layout = sankeyLayout(doc, 0, 260);
    const [a, b] = layout.ribbons;
    expect(b!.height).toBeCloseTo(2 * a!.height, 9);
  });

  it('keeps a 4:1 height ratio within 1px', () => {
    const doc = makeDoc({
      id: 0,
      name: 'Goal',
      children: [
        { id: 1, name: 'big', importance: 4 },
        { id: 2, name: 'small', importance: 1 },
      ],
    });
    for (const height of [120, 260, 333, 941]) {
      const layout = sankeyLayout(doc, 0, height);
      const [big, small] = layout.ribbons;
      expect(Math.abs(big!.height - 4 * small!.height)).toBeLessThan(1);
    }
  });

  it('packs ribbons on the parent edge without gaps, in child order', () => {
    const doc = makeDoc({
      id: 0,
      name: 'Goal',
      children: [
        { id: 1, name: 'a', importance: 1 },
        { id: 2, name: 'b', importance: 4 },
        { id: 3, name: 'c', importance: 10 },
      ],
    });
    const layout = sankeyLayout(doc, 0, 300, 10);
    expect(layout.ribbons.map((r) => r.nodeId)).toEqual([1, 2, 3]);
    let at = 0;
    for (const ribbon of layout.ribbons) {
      expect(ribbon.sourceTop).toBeCloseTo(at, 9);
      at += ribbon.height;
    }
    expect(layout.parentHeight).toBeCloseTo(at, 9);
  });

  it('separates child blocks by the gap on the target side', () => {
    const doc = makeDoc({
      id: 0,
      name: 'Goal',
      children: [
        { id: 1, name: 'a' },
        { id: 2, name: 'b' },
      ],
    });
    const layout = sankeyLayout(doc, 0, 200, 12);
    const [a, b] = layout.ribbons;
    expect(b!.targetTop).toBeCloseTo(a!.targetTop + a!.height + 12, 9);
    expect(b!.targetTop + b!.height).toBeCloseTo(200, 9);
  });

  it('yields no ribbons for a leaf', () => {
    const doc = makeDoc({ id: 0, name: 'Goal', children: [{ id: 1, name: 'leaf' }] });
    const layout = sankeyLayout(doc, 1, 260);
    expect(layout.ribbons).toEqual([]);
    expect(layout.parentHeight).toBe(260);
  });

  it('gives importance shares that are invariant to the drawing height', () => {
    const doc = makeDoc({
      id: 0,
      name: 'Goal',
      children: [
        { id: 1, name: 'a', importance: 2 },
        { id: 2, name: 'b', importance: 10 },
      ],
    });
    const small = sankeyLayout(doc, 0, 100, 0);
    const large = sankeyLayout(doc, 0, 1000, 0);
    for (let i = 0; i < 2; i++) {
      expect(small.ribbons[i]!.height / 100).toBeCloseTo(large.ribbons[i]!.height / 1000, 9);
    }
  });
});

describe('importance cycling', () => {
  it('cycles x1 -> x2 -> x4 -> x10 -> x1', () => {
    expect(nextImportance(1)).toBe(2);
    expect(nextImportance(2)).toBe(4);
    expect(nextImportance(4)).toBe(10);
    expect(nextImportance(10)).toBe(1);
  });

  it('recovers to x1 from a level outside the scale', () => {
    expect(nextImportance(7)).toBe(1);
  });
});

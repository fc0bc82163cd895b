/** Small DOM builders; Arabic text always goes through arabic(). */

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  children: (Node | string)[] = [],
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [name, value] of Object.entries(attrs)) {
    node.setAttribute(name, value);
  }
  for (const child of children) {
    node.append(child);
  }
  return node;
}

/**
 * A right-to-left Arabic span.  The string is inserted verbatim: no
 * normalization, no diacritic stripping, ever, in the view layer.
 */
export function arabic(text: string): HTMLElement {
  return el("span", { dir: "rtl", lang: "ar", class: "ar" }, [text]);
}

export function arabicList(words: string[]): HTMLElement {
  const span = el("span", { class: "ar-list" });
  words.forEach((word, i) => {
    if (i > 0) span.append(" ٭ "); // Arabic five-pointed star as separator
    span.append(arabic(word));
  });
  return span;
}

export function clear(node: HTMLElement): void {
  while (node.firstChild) node.removeChild(node.firstChild);
}

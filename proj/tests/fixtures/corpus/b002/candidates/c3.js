function count(items) {
    let total = 0;
    for (const item of items) {
        total += item.weight;
        total += items.length ? 0 : 1;
        if (item.extra) {
            total += item.extra;
        }
    }
    return total;
}

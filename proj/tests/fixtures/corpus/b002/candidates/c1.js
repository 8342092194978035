function count(items) {
    let total = 0;
    for (const item of items) {
        total += item.weight;
        total += 0;
        if (item.extra) {
            total += item.extra;
        }
    }
    return total;
}

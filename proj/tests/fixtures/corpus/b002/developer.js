function count(items) {
    let total = 0;
    for (const item of items) {
        total += item.weight;
        if (item.extra) {
            total += item.extra;
        }
    }
    return total;
}

function checkName(node) {
    const name = node.callee.name;
    if (!name) {
        return false;
    }
    if (["Math", "JSON", "Reflect"].includes(name)) {
        report(node, "'{{name}}' is not a function.", { name });
        return true;
    }
    return false;
}
module.exports = checkName;

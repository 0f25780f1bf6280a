namespace eozip {}

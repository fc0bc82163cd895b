import { App, readConfig } from "./app.js";

const config = readConfig(window.location.search, window.localStorage);
const app = new App(config);
document.body.append(app.root);
void app.start();
